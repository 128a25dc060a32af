// Copyright 2026 The apkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "apkit/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "apkit/error.hpp"

namespace apkit {
namespace {

constexpr double kAlignTol = 1e-6;

std::int64_t round_to_cells(double cells) {
  return static_cast<std::int64_t>(std::llround(cells));
}

void check_axis(const Axis& a) {
  if (!(a.h > 0.0) || !std::isfinite(a.h)) throw ArgumentError("axis spacing h must be positive");
  if (a.n == 0) throw ArgumentError("axis sample_count must be positive");
  if (!std::isfinite(a.origin)) throw ArgumentError("axis origin must be finite");
  if (a.discrete()) {
    if (a.h != 1.0) throw ArgumentError("integer and cyclic axes have spacing 1");
    if (a.origin != std::round(a.origin)) throw ArgumentError("discrete axis origin must be an integer");
  }
}

}  // namespace

double Axis::coordinate(std::int64_t i) const {
  if (discrete()) return origin + static_cast<double>(i);
  return origin + (static_cast<double>(i) + 0.5) * h;
}

DomainSpec::DomainSpec(DomainKind kind, std::vector<Axis> axes, BoundaryMode mode)
    : kind_(kind), mode_(mode), axes_(std::move(axes)) {
  if (axes_.empty()) throw ArgumentError("domain needs at least one axis");
  for (const Axis& a : axes_) check_axis(a);
  auto all_of_kind = [&](AxisKind k) {
    return std::all_of(axes_.begin(), axes_.end(), [k](const Axis& a) { return a.kind == k; });
  };
  switch (kind_) {
    case DomainKind::kRealGrid:
      if (!all_of_kind(AxisKind::kReal)) throw ArgumentError("real-grid domain needs real axes");
      break;
    case DomainKind::kIntegerLattice:
      if (!all_of_kind(AxisKind::kInteger)) throw ArgumentError("integer-lattice domain needs integer axes");
      break;
    case DomainKind::kCyclic:
      if (!all_of_kind(AxisKind::kCyclic)) throw ArgumentError("cyclic domain needs cyclic axes");
      mode_ = BoundaryMode::kWrap;
      break;
    case DomainKind::kTorusGrid:
      if (!all_of_kind(AxisKind::kTorus)) throw ArgumentError("torus-grid domain needs torus axes");
      mode_ = BoundaryMode::kWrap;
      break;
    case DomainKind::kProduct:
      if (std::all_of(axes_.begin(), axes_.end(), [](const Axis& a) { return a.compact(); }))
        mode_ = BoundaryMode::kWrap;
      break;
  }
  const std::size_t d = axes_.size();
  shape_.resize(d);
  strides_.resize(d);
  size_ = 1;
  cell_volume_ = 1.0;
  for (std::size_t a = d; a-- > 0;) {
    shape_[a] = axes_[a].n;
    strides_[a] = size_;
    size_ *= axes_[a].n;
    cell_volume_ *= axes_[a].h;
  }
}

DomainSpec DomainSpec::real_grid(double h, std::size_t n, double origin, BoundaryMode mode) {
  return DomainSpec(DomainKind::kRealGrid, {Axis{AxisKind::kReal, h, n, origin}}, mode);
}

DomainSpec DomainSpec::symmetric_real_grid(double h, std::size_t n, BoundaryMode mode) {
  return real_grid(h, n, -0.5 * h * static_cast<double>(n), mode);
}

DomainSpec DomainSpec::integer_lattice(std::size_t n, std::int64_t origin, BoundaryMode mode) {
  return DomainSpec(DomainKind::kIntegerLattice,
                    {Axis{AxisKind::kInteger, 1.0, n, static_cast<double>(origin)}}, mode);
}

DomainSpec DomainSpec::cyclic(std::size_t n) {
  return DomainSpec(DomainKind::kCyclic, {Axis{AxisKind::kCyclic, 1.0, n, 0.0}}, BoundaryMode::kWrap);
}

DomainSpec DomainSpec::torus_grid(double h, std::size_t n, double origin) {
  return DomainSpec(DomainKind::kTorusGrid, {Axis{AxisKind::kTorus, h, n, origin}}, BoundaryMode::kWrap);
}

DomainSpec DomainSpec::product(const std::vector<DomainSpec>& factors) {
  if (factors.empty()) throw ArgumentError("product of zero domains");
  std::vector<Axis> axes;
  BoundaryMode mode = BoundaryMode::kWrap;
  for (const DomainSpec& f : factors) {
    axes.insert(axes.end(), f.axes().begin(), f.axes().end());
    if (f.boundary_mode() == BoundaryMode::kZeroExtend) mode = BoundaryMode::kZeroExtend;
  }
  return DomainSpec(DomainKind::kProduct, std::move(axes), mode);
}

bool DomainSpec::wraps(std::size_t a) const {
  return axes_[a].compact() || mode_ == BoundaryMode::kWrap;
}

bool DomainSpec::discrete() const {
  return std::all_of(axes_.begin(), axes_.end(), [](const Axis& a) { return a.discrete(); });
}

std::size_t DomainSpec::flat_index(std::span<const std::int64_t> cell) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    std::int64_t i = cell[a];
    const auto n = static_cast<std::int64_t>(shape_[a]);
    if (wraps(a)) {
      i %= n;
      if (i < 0) i += n;
    } else if (i < 0 || i >= n) {
      throw SupportError("cell index outside the represented domain");
    }
    flat += static_cast<std::size_t>(i) * strides_[a];
  }
  return flat;
}

CellIndex DomainSpec::unflatten(std::size_t flat) const {
  CellIndex cell(axes_.size());
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    cell[a] = static_cast<std::int64_t>(flat / strides_[a]);
    flat %= strides_[a];
  }
  return cell;
}

Point DomainSpec::point(std::size_t flat) const {
  const CellIndex cell = unflatten(flat);
  Point x(axes_.size());
  for (std::size_t a = 0; a < axes_.size(); ++a) x[a] = axes_[a].coordinate(cell[a]);
  return x;
}

CellIndex DomainSpec::snap_translation(std::span<const double> t, double* snap_distance) const {
  if (t.size() != axes_.size()) throw DomainError("translation rank does not match domain rank");
  CellIndex cells(t.size());
  double d2 = 0.0;
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (!std::isfinite(t[a])) throw ArgumentError("non-finite translation");
    cells[a] = round_to_cells(t[a] / axes_[a].h);
    const double r = t[a] - static_cast<double>(cells[a]) * axes_[a].h;
    d2 += r * r;
  }
  if (snap_distance != nullptr) *snap_distance = std::sqrt(d2);
  return cells;
}

CellIndex DomainSpec::snap_edge(std::span<const double> x, double* snap_distance) const {
  if (x.size() != axes_.size()) throw DomainError("point rank does not match domain rank");
  CellIndex cells(x.size());
  double d2 = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    const double rel = x[a] - axes_[a].origin;
    cells[a] = round_to_cells(rel / axes_[a].h);
    const double r = rel - static_cast<double>(cells[a]) * axes_[a].h;
    d2 += r * r;
  }
  if (snap_distance != nullptr) *snap_distance = std::sqrt(d2);
  return cells;
}

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::kRealGrid: return "real-grid";
    case DomainKind::kIntegerLattice: return "integer-lattice";
    case DomainKind::kCyclic: return "cyclic";
    case DomainKind::kTorusGrid: return "torus-grid";
    case DomainKind::kProduct: return "product-of-specs";
  }
  return "?";
}

std::string to_string(AxisKind kind) {
  switch (kind) {
    case AxisKind::kReal: return "real";
    case AxisKind::kInteger: return "integer";
    case AxisKind::kCyclic: return "cyclic";
    case AxisKind::kTorus: return "torus";
  }
  return "?";
}

std::string to_string(BoundaryMode mode) {
  return mode == BoundaryMode::kWrap ? "wrap" : "zero-extend";
}

Window Window::box(Point lo, const Point& hi) {
  if (lo.size() != hi.size()) throw ArgumentError("box corners have different ranks");
  Window w{std::move(lo), {}};
  w.side.resize(hi.size());
  for (std::size_t a = 0; a < hi.size(); ++a) w.side[a] = hi[a] - w.offset[a];
  return w;
}

Window Window::unit(std::size_t rank) { return Window{Point(rank, 0.0), std::vector<double>(rank, 1.0)}; }

Point Window::hi() const {
  Point p = offset;
  for (std::size_t a = 0; a < p.size(); ++a) p[a] += side[a];
  return p;
}

Window Window::translated(std::span<const double> t) const {
  Window w = *this;
  for (std::size_t a = 0; a < w.offset.size(); ++a) w.offset[a] += t[a];
  return w;
}

double haar_measure(const Window& k) {
  double m = 1.0;
  for (double s : k.side) m *= s;
  return m;
}

std::size_t CellBox::cells() const {
  return std::accumulate(count.begin(), count.end(), std::size_t{1}, std::multiplies<>());
}

std::vector<std::size_t> cell_counts(const DomainSpec& domain, const Window& k) {
  if (k.rank() != domain.rank()) throw DomainError("window rank does not match domain rank");
  std::vector<std::size_t> count(k.rank());
  for (std::size_t a = 0; a < k.rank(); ++a) {
    const double cells = k.side[a] / domain.axis(a).h;
    const std::int64_t c = round_to_cells(cells);
    if (c <= 0 || std::abs(cells - static_cast<double>(c)) > kAlignTol * std::max(1.0, cells))
      throw ArgumentError("window side is not a positive whole number of cells");
    count[a] = static_cast<std::size_t>(c);
  }
  return count;
}

CellBox to_cells(const DomainSpec& domain, const Window& k) {
  CellBox box;
  box.count = cell_counts(domain, k);
  box.start = domain.snap_edge(k.offset);
  return box;
}

VanHoveSequence::VanHoveSequence(std::vector<AxisRule> rules, std::string name, std::size_t n_max)
    : rules_(std::move(rules)), name_(std::move(name)), n_max_(n_max) {
  if (rules_.empty()) throw ArgumentError("van Hove sequence needs at least one axis");
  for (const AxisRule& r : rules_) {
    if (!(r.hi_const - r.lo_const + (r.hi_slope - r.lo_slope) > 0.0))
      throw ArgumentError("A_1 must have positive measure");
    if (r.hi_slope < r.lo_slope) throw ArgumentError("A_n must not shrink");
  }
}

VanHoveSequence VanHoveSequence::centered_cubes(std::size_t rank, double side_unit, std::size_t n_max) {
  return VanHoveSequence(std::vector<AxisRule>(rank, AxisRule{0.0, -0.5 * side_unit, 0.0, 0.5 * side_unit}),
                         "centered-cubes", n_max);
}

VanHoveSequence VanHoveSequence::centered_intervals(std::size_t rank, double scale, std::size_t n_max) {
  return VanHoveSequence(std::vector<AxisRule>(rank, AxisRule{0.0, -scale, 0.0, scale}),
                         "centered-intervals", n_max);
}

VanHoveSequence VanHoveSequence::right_rays(double scale, std::size_t n_max) {
  return VanHoveSequence({AxisRule{0.0, 0.0, 0.0, scale}}, "right-rays", n_max);
}

VanHoveSequence VanHoveSequence::left_rays(double scale, std::size_t n_max) {
  return VanHoveSequence({AxisRule{0.0, -scale, 0.0, 0.0}}, "left-rays", n_max);
}

VanHoveSequence VanHoveSequence::slab(std::size_t n_max) {
  return VanHoveSequence({AxisRule{0.0, 0.0, 0.0, 1.0}, AxisRule{0.0, 0.0, 1.0, 0.0}}, "slab", n_max);
}

VanHoveSequence VanHoveSequence::full_group(const DomainSpec& domain, std::size_t n_max) {
  std::vector<AxisRule> rules;
  for (std::size_t a = 0; a < domain.rank(); ++a) {
    const Axis& ax = domain.axis(a);
    if (!domain.wraps(a)) throw DomainError("full-group averaging needs a compact (wrapping) domain");
    rules.push_back(AxisRule{ax.origin, 0.0, ax.origin + ax.extent(), 0.0});
  }
  return VanHoveSequence(std::move(rules), "full-group", n_max);
}

Window VanHoveSequence::window(std::size_t n) const {
  if (n == 0) throw ArgumentError("van Hove index starts at 1");
  Window w;
  w.offset.resize(rules_.size());
  w.side.resize(rules_.size());
  const double dn = static_cast<double>(n);
  for (std::size_t a = 0; a < rules_.size(); ++a) {
    const AxisRule& r = rules_[a];
    const double lo = r.lo_const + r.lo_slope * dn;
    const double hi = r.hi_const + r.hi_slope * dn;
    w.offset[a] = lo;
    w.side[a] = hi - lo;
  }
  return w;
}

bool VanHoveSequence::symmetric() const {
  // a whole compact group is its own negative
  if (name_ == "full-group") return true;
  return std::all_of(rules_.begin(), rules_.end(), [](const AxisRule& r) {
    return r.lo_const == -r.hi_const && r.lo_slope == -r.hi_slope;
  });
}

bool VanHoveSequence::nested() const {
  return std::all_of(rules_.begin(), rules_.end(),
                     [](const AxisRule& r) { return r.lo_slope <= 0.0 && r.hi_slope >= 0.0; });
}

VanHoveSequence VanHoveSequence::with_n_max(std::size_t n_max) const {
  VanHoveSequence s = *this;
  s.n_max_ = n_max;
  return s;
}

std::vector<Window> VanHoveSequence::materialize() const {
  std::vector<Window> out;
  out.reserve(n_max_);
  for (std::size_t n = 1; n <= n_max_; ++n) out.push_back(window(n));
  return out;
}

namespace {

struct Interval {
  double lo;
  double hi;
  double length() const { return std::max(0.0, hi - lo); }
};

Interval intersect(Interval a, Interval b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

double box_measure(const std::vector<Interval>& box) {
  double m = 1.0;
  for (const Interval& i : box) m *= i.length();
  return m;
}

}  // namespace

double k_boundary_measure(const Window& a, const Window& k, const DomainSpec* domain) {
  if (a.rank() != k.rank()) throw ArgumentError("A and K have different ranks");
  if (domain != nullptr && domain->rank() != a.rank()) throw DomainError("window rank does not match domain");
  const std::size_t d = a.rank();
  std::vector<Interval> box_a(d), dilated(d), eroded(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double alo = a.offset[i];
    const double ahi = a.offset[i] + a.side[i];
    const double klo = k.offset[i];
    const double khi = k.offset[i] + k.side[i];
    if (domain != nullptr && domain->wraps(i)) {
      const double period = domain->axis(i).extent();
      if (a.side[i] >= period * (1.0 - 1e-12)) {
        // A is the whole circle on this axis; so are A + K and the erosion
        box_a[i] = dilated[i] = eroded[i] = Interval{0.0, period};
        continue;
      }
    }
    box_a[i] = Interval{alo, ahi};
    dilated[i] = Interval{alo + klo, ahi + khi};
    // {z : z + K subset A}
    eroded[i] = Interval{alo - klo, ahi - khi};
  }
  std::vector<Interval> dil_cap_a(d), ero_cap_a(d);
  for (std::size_t i = 0; i < d; ++i) {
    dil_cap_a[i] = intersect(dilated[i], box_a[i]);
    ero_cap_a[i] = intersect(eroded[i], box_a[i]);
  }
  // closure(A+K) \ A lies outside A and closure(A) \ erosion lies inside
  // closure(A): the two pieces overlap only on the null set boundary(A).
  const double outer = box_measure(dilated) - box_measure(dil_cap_a);
  const double inner = box_measure(box_a) - box_measure(ero_cap_a);
  return std::max(0.0, outer) + std::max(0.0, inner);
}

VanHoveReport van_hove_report(const VanHoveSequence& seq, const Window& k, std::size_t n_max,
                              double tolerance, const DomainSpec* domain) {
  if (n_max < 2) throw ArgumentError("van_hove_report needs n_max >= 2");
  VanHoveReport rep{seq.name(), k, tolerance, {}, true, false};
  rep.rows.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const Window an = seq.window(n);
    const double b = k_boundary_measure(an, k, domain);
    const double m = haar_measure(an);
    rep.rows.push_back({n, b, m, b / m});
    if (n > 1 && rep.rows[n - 1].ratio > rep.rows[n - 2].ratio * (1.0 + 1e-12) + 1e-300)
      rep.nonincreasing = false;
  }
  rep.verdict = rep.rows.back().ratio < tolerance;
  return rep;
}

}  // namespace apkit
