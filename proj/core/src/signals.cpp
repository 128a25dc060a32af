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

#include "apkit/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "apkit/error.hpp"
#include "apkit/parallel.hpp"

namespace apkit {
namespace {

// exp(2 pi i frac) with frac reduced to [-1/2, 1/2].
Complex unit_phase(double frac) {
  frac -= std::round(frac);
  const double angle = 2.0 * std::numbers::pi * frac;
  return {std::cos(angle), std::sin(angle)};
}

std::int64_t positive_mod(std::int64_t a, std::int64_t n) {
  a %= n;
  return a < 0 ? a + n : a;
}

// Phase of chi at an integer coordinate of a cyclic axis, as an exact
// residue (k x mod N) / N.
double cyclic_phase(double k, std::int64_t x, std::size_t n_axis) {
  const auto n = static_cast<std::int64_t>(n_axis);
  const auto kk = positive_mod(static_cast<std::int64_t>(std::llround(k)), n);
  const auto xx = positive_mod(x, n);
  return static_cast<double>((kk * xx) % n) / static_cast<double>(n);
}

double axis_phase(const Axis& axis, double k, double x) {
  switch (axis.kind) {
    case AxisKind::kCyclic:
      return cyclic_phase(k, static_cast<std::int64_t>(std::llround(x)), axis.n);
    case AxisKind::kInteger: {
      const double kx = k * std::round(x);
      return kx - std::round(kx);
    }
    case AxisKind::kReal:
    case AxisKind::kTorus: {
      const double kx = k * x;
      return kx - std::round(kx);
    }
  }
  return 0.0;
}

bool within_valid(const GridFunction& f, std::span<const std::int64_t> cell) {
  for (std::size_t a = 0; a < cell.size(); ++a) {
    const auto [lo, hi] = f.valid_range(a);
    if (cell[a] < lo || cell[a] >= hi) return false;
  }
  return true;
}

// Output sample i_a reads source  sign_a * i_a + offset_a  on every axis.
GridFunction remap(const GridFunction& f, const std::vector<int>& sign,
                   const std::vector<std::int64_t>& offset, double snap) {
  const DomainSpec& dom = f.domain();
  const std::size_t d = dom.rank();
  std::vector<Complex> out(f.size(), Complex{});
  std::size_t nonzero_total = 0;
  for (const Complex& v : f.samples())
    if (v != Complex{}) ++nonzero_total;
  std::size_t nonzero_kept = 0;
  CellIndex cell(d, 0);
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    std::size_t src = 0;
    bool inside = true;
    for (std::size_t a = 0; a < d; ++a) {
      std::int64_t s = sign[a] * cell[a] + offset[a];
      const auto n = static_cast<std::int64_t>(dom.shape()[a]);
      if (dom.wraps(a)) {
        s = positive_mod(s, n);
      } else if (s < 0 || s >= n) {
        inside = false;
        break;
      }
      src += static_cast<std::size_t>(s) * dom.strides()[a];
    }
    if (inside) {
      out[flat] = f[src];
      if (out[flat] != Complex{}) ++nonzero_kept;
    }
    for (std::size_t a = d; a-- > 0;) {
      if (++cell[a] < static_cast<std::int64_t>(dom.shape()[a])) break;
      cell[a] = 0;
    }
  }

  SampleMetadata meta = f.metadata();
  meta.snap_distance = std::max(meta.snap_distance, snap);
  const bool lossless = meta.compact_support && nonzero_kept == nonzero_total;
  if (!lossless) {
    meta.compact_support = false;
    for (std::size_t a = 0; a < d; ++a) {
      if (dom.wraps(a)) {
        meta.contaminated[a] = {};
        continue;
      }
      const auto n = static_cast<std::int64_t>(dom.shape()[a]);
      const auto [vlo, vhi] = f.valid_range(a);
      std::int64_t start, end;
      if (sign[a] > 0) {
        start = vlo - offset[a];
        end = vhi - offset[a];
      } else {
        start = offset[a] - vhi + 1;
        end = offset[a] - vlo + 1;
      }
      start = std::clamp<std::int64_t>(start, 0, n);
      end = std::clamp<std::int64_t>(end, 0, n);
      if (end <= start) {
        meta.contaminated[a] = {static_cast<std::size_t>(n), 0};
      } else {
        meta.contaminated[a] = {static_cast<std::size_t>(start), static_cast<std::size_t>(n - end)};
      }
    }
  }
  return GridFunction(dom, std::move(out), std::move(meta));
}

}  // namespace

GridFunction::GridFunction(DomainSpec domain, std::vector<Complex> samples, SampleMetadata meta)
    : domain_(std::move(domain)), samples_(std::move(samples)), meta_(std::move(meta)) {
  if (samples_.size() != domain_.size())
    throw ArgumentError("sample count does not match the domain size");
  for (const Complex& v : samples_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw ArgumentError("GridFunction samples must be finite");
  if (meta_.contaminated.empty()) meta_.contaminated.assign(domain_.rank(), Margin{});
  if (meta_.contaminated.size() != domain_.rank())
    throw ArgumentError("metadata margin count does not match the domain rank");
  for (std::size_t a = 0; a < domain_.rank(); ++a) {
    if (domain_.wraps(a)) meta_.contaminated[a] = {};
  }
  if (meta_.compact_support) meta_.contaminated.assign(domain_.rank(), Margin{});
}

GridFunction GridFunction::zeros(const DomainSpec& domain) {
  SampleMetadata meta;
  meta.compact_support = true;
  meta.provenance = "zero";
  return GridFunction(domain, std::vector<Complex>(domain.size()), std::move(meta));
}

GridFunction GridFunction::constant(const DomainSpec& domain, Complex c) {
  SampleMetadata meta;
  meta.provenance = "constant";
  return GridFunction(domain, std::vector<Complex>(domain.size(), c), std::move(meta));
}

GridFunction GridFunction::sample(const DomainSpec& domain, const std::function<Complex(const Point&)>& f,
                                  std::string provenance) {
  auto values = parallel_map(domain.size(), [&](std::size_t i) { return f(domain.point(i)); });
  SampleMetadata meta;
  meta.provenance = std::move(provenance);
  return GridFunction(domain, std::move(values), std::move(meta));
}

GridFunction GridFunction::sample_1d(const DomainSpec& domain, const std::function<double(double)>& f,
                                     std::string provenance) {
  if (domain.rank() != 1) throw DomainError("sample_1d needs a one-dimensional domain");
  const Axis& ax = domain.axis(0);
  auto values = parallel_map(domain.size(), [&](std::size_t i) {
    return Complex(f(ax.coordinate(static_cast<std::int64_t>(i))), 0.0);
  });
  SampleMetadata meta;
  meta.provenance = std::move(provenance);
  return GridFunction(domain, std::move(values), std::move(meta));
}

bool GridFunction::clean() const {
  return std::all_of(meta_.contaminated.begin(), meta_.contaminated.end(),
                     [](const Margin& m) { return m.lo == 0 && m.hi == 0; });
}

GridFunction GridFunction::with_metadata(SampleMetadata meta) const {
  return GridFunction(domain_, samples_, std::move(meta));
}

GridFunction GridFunction::with_provenance(std::string provenance) const {
  SampleMetadata meta = meta_;
  meta.provenance = std::move(provenance);
  return GridFunction(domain_, samples_, std::move(meta));
}

GridFunction GridFunction::as_compact(bool compact) const {
  SampleMetadata meta = meta_;
  meta.compact_support = compact;
  return GridFunction(domain_, samples_, std::move(meta));
}

std::pair<std::int64_t, std::int64_t> GridFunction::valid_range(std::size_t axis) const {
  const auto n = static_cast<std::int64_t>(domain_.shape()[axis]);
  if (domain_.wraps(axis)) return {0, n};
  const Margin& m = meta_.contaminated[axis];
  const auto lo = std::min<std::int64_t>(static_cast<std::int64_t>(m.lo), n);
  const auto hi = std::max<std::int64_t>(n - static_cast<std::int64_t>(m.hi), lo);
  return {lo, hi};
}

Character Character::canonical(const DomainSpec& domain) const {
  if (frequency.size() != domain.rank()) throw DomainError("character rank does not match domain rank");
  Character c = *this;
  for (std::size_t a = 0; a < domain.rank(); ++a) {
    const Axis& ax = domain.axis(a);
    if (ax.kind == AxisKind::kCyclic) {
      const auto n = static_cast<std::int64_t>(ax.n);
      c.frequency[a] = static_cast<double>(positive_mod(std::llround(frequency[a]), n));
    } else if (ax.kind == AxisKind::kInteger) {
      double k = frequency[a] - std::floor(frequency[a]);
      if (k >= 1.0) k = 0.0;
      c.frequency[a] = k;
    }
  }
  return c;
}

Character Character::conjugate() const {
  Character c = *this;
  for (double& k : c.frequency) k = k == 0.0 ? 0.0 : -k;
  return c;
}

Character Character::operator*(const Character& other) const {
  if (frequency.size() != other.frequency.size()) throw ArgumentError("character ranks differ");
  Character c = *this;
  for (std::size_t a = 0; a < c.frequency.size(); ++a) c.frequency[a] += other.frequency[a];
  return c;
}

Complex Character::at(const DomainSpec& domain, std::span<const std::int64_t> cell) const {
  double frac = 0.0;
  for (std::size_t a = 0; a < domain.rank(); ++a) {
    const Axis& ax = domain.axis(a);
    if (ax.kind == AxisKind::kCyclic) {
      frac += cyclic_phase(frequency[a], static_cast<std::int64_t>(ax.origin) + cell[a], ax.n);
    } else {
      frac += axis_phase(ax, frequency[a], ax.coordinate(cell[a]));
    }
  }
  return unit_phase(frac);
}

Complex Character::at(const DomainSpec& domain, std::span<const double> x) const {
  double frac = 0.0;
  for (std::size_t a = 0; a < domain.rank(); ++a) frac += axis_phase(domain.axis(a), frequency[a], x[a]);
  return unit_phase(frac);
}

std::vector<Character> full_dual_grid(const DomainSpec& domain) {
  std::size_t total = 1;
  for (const Axis& ax : domain.axes()) {
    if (ax.kind != AxisKind::kCyclic) throw DomainError("full dual grid exists only for cyclic axes");
    total *= ax.n;
  }
  std::vector<Character> out;
  out.reserve(total);
  CellIndex k(domain.rank(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    Character c;
    c.frequency.assign(k.begin(), k.end());
    out.push_back(std::move(c));
    for (std::size_t a = domain.rank(); a-- > 0;) {
      if (++k[a] < static_cast<std::int64_t>(domain.axis(a).n)) break;
      k[a] = 0;
    }
  }
  return out;
}

std::vector<Character> lattice_dual_grid(const DomainSpec& domain, std::int64_t max_index) {
  if (domain.rank() != 1) throw DomainError("lattice_dual_grid needs a one-dimensional domain");
  const Axis& ax = domain.axis(0);
  if (ax.kind == AxisKind::kCyclic) return full_dual_grid(domain);
  if (max_index < 0) throw ArgumentError("max_index must be non-negative");
  std::vector<Character> out;
  for (std::int64_t m = -max_index; m <= max_index; ++m) {
    Character c{{static_cast<double>(m) / ax.extent()}};
    out.push_back(ax.kind == AxisKind::kInteger ? c.canonical(domain) : c);
  }
  if (ax.kind == AxisKind::kInteger) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

TrigPolynomial::TrigPolynomial(std::vector<TrigTerm> terms) {
  for (const TrigTerm& t : terms) add(t.coefficient, t.character);
}

void TrigPolynomial::add(Complex coefficient, const Character& chi) {
  for (TrigTerm& t : terms_) {
    if (t.character == chi) {
      t.coefficient += coefficient;
      return;
    }
  }
  terms_.push_back({coefficient, chi});
}

double TrigPolynomial::coefficient_l1() const {
  double s = 0.0;
  for (const TrigTerm& t : terms_) s += std::abs(t.coefficient);
  return s;
}

Complex TrigPolynomial::coefficient(const Character& chi) const {
  for (const TrigTerm& t : terms_)
    if (t.character == chi) return t.coefficient;
  return {};
}

TrigPolynomial TrigPolynomial::canonical(const DomainSpec& domain) const {
  TrigPolynomial p;
  for (const TrigTerm& t : terms_) p.add(t.coefficient, t.character.canonical(domain));
  return p;
}

TrigPolynomial TrigPolynomial::operator+(const TrigPolynomial& other) const {
  TrigPolynomial p = *this;
  for (const TrigTerm& t : other.terms_) p.add(t.coefficient, t.character);
  return p;
}

TrigPolynomial TrigPolynomial::operator*(const TrigPolynomial& other) const {
  TrigPolynomial p;
  for (const TrigTerm& a : terms_)
    for (const TrigTerm& b : other.terms_) p.add(a.coefficient * b.coefficient, a.character * b.character);
  return p;
}

TrigPolynomial TrigPolynomial::operator*(Complex c) const {
  TrigPolynomial p = *this;
  for (TrigTerm& t : p.terms_) t.coefficient *= c;
  return p;
}

GridFunction eval_character(const Character& chi, const DomainSpec& domain, Complex c) {
  if (chi.frequency.size() != domain.rank()) throw DomainError("character rank does not match domain rank");
  auto values = parallel_map(domain.size(), [&](std::size_t i) {
    const CellIndex cell = domain.unflatten(i);
    return c * chi.at(domain, cell);
  });
  SampleMetadata meta;
  meta.provenance = "character";
  return GridFunction(domain, std::move(values), std::move(meta));
}

GridFunction eval_trig_poly(const TrigPolynomial& p, const DomainSpec& domain) {
  for (const TrigTerm& t : p.terms())
    if (t.character.frequency.size() != domain.rank())
      throw DomainError("character rank does not match domain rank");
  auto values = parallel_map(domain.size(), [&](std::size_t i) {
    const CellIndex cell = domain.unflatten(i);
    Complex s{};
    for (const TrigTerm& t : p.terms()) s += t.coefficient * t.character.at(domain, cell);
    return s;
  });
  SampleMetadata meta;
  meta.provenance = "trig-polynomial";
  return GridFunction(domain, std::move(values), std::move(meta));
}

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const Atom& a : atoms_) {
    if (!std::isfinite(a.weight.real()) || !std::isfinite(a.weight.imag()))
      throw ArgumentError("atom weights must be finite");
    total_variation_ += std::abs(a.weight);
  }
}

void require_same_domain(const GridFunction& f, const GridFunction& g) {
  if (!(f.domain() == g.domain())) throw DomainError("operands live on different domains");
}

SampleMetadata combine_metadata(const GridFunction& f, const GridFunction& g, bool compact) {
  SampleMetadata meta;
  meta.compact_support = compact;
  meta.snap_distance = std::max(f.metadata().snap_distance, g.metadata().snap_distance);
  meta.contaminated.resize(f.domain().rank());
  for (std::size_t a = 0; a < f.domain().rank(); ++a) {
    meta.contaminated[a].lo = std::max(f.margin(a).lo, g.margin(a).lo);
    meta.contaminated[a].hi = std::max(f.margin(a).hi, g.margin(a).hi);
  }
  return meta;
}

namespace {

template <typename Op>
GridFunction binary(const GridFunction& f, const GridFunction& g, bool compact, Op op) {
  require_same_domain(f, g);
  std::vector<Complex> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(f[i], g[i]);
  return GridFunction(f.domain(), std::move(out), combine_metadata(f, g, compact));
}

}  // namespace

GridFunction operator+(const GridFunction& f, const GridFunction& g) {
  const bool compact = f.metadata().compact_support && g.metadata().compact_support;
  return binary(f, g, compact, std::plus<>());
}

GridFunction operator-(const GridFunction& f, const GridFunction& g) {
  const bool compact = f.metadata().compact_support && g.metadata().compact_support;
  return binary(f, g, compact, std::minus<>());
}

GridFunction operator*(const GridFunction& f, const GridFunction& g) {
  const bool compact = f.metadata().compact_support || g.metadata().compact_support;
  auto out = binary(f, g, compact, std::multiplies<>());
  if (compact && !(f.clean() && g.clean())) {
    // a compact factor only vanishes where it is itself trusted
    SampleMetadata meta = combine_metadata(f, g, false);
    return out.with_metadata(std::move(meta));
  }
  return out;
}

GridFunction operator*(Complex c, const GridFunction& f) {
  return map(f, [c](Complex v) { return c * v; });
}

GridFunction map(const GridFunction& f, const std::function<Complex(Complex)>& op) {
  std::vector<Complex> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(f[i]);
  return GridFunction(f.domain(), std::move(out), f.metadata());
}

GridFunction abs(const GridFunction& f) {
  return map(f, [](Complex v) { return Complex(std::abs(v), 0.0); });
}

GridFunction conj(const GridFunction& f) {
  return map(f, [](Complex v) { return std::conj(v); });
}

GridFunction reflect(const GridFunction& f) {
  const DomainSpec& dom = f.domain();
  std::vector<int> sign(dom.rank(), -1);
  std::vector<std::int64_t> offset(dom.rank());
  for (std::size_t a = 0; a < dom.rank(); ++a) {
    const Axis& ax = dom.axis(a);
    // -x_i = x_j  with  j = c - i
    const double c = ax.discrete() ? -2.0 * ax.origin : -2.0 * ax.origin / ax.h - 1.0;
    const double rc = std::round(c);
    if (std::abs(c - rc) > 1e-9 * std::max(1.0, std::abs(c)))
      throw DomainError("grid is not mapped onto itself by x -> -x");
    offset[a] = static_cast<std::int64_t>(rc);
    if (!dom.wraps(a) && offset[a] != static_cast<std::int64_t>(ax.n) - 1)
      throw DomainError("grid is not mapped onto itself by x -> -x");
  }
  return remap(f, sign, offset, 0.0);
}

GridFunction involution(const GridFunction& f) { return conj(reflect(f)); }

GridFunction pointwise(PointwiseOp op, const GridFunction& f, const GridFunction* g, Complex c) {
  auto need_g = [&]() -> const GridFunction& {
    if (g == nullptr) throw ArgumentError("binary pointwise op needs a second operand");
    return *g;
  };
  switch (op) {
    case PointwiseOp::kAdd: return f + need_g();
    case PointwiseOp::kSub: return f - need_g();
    case PointwiseOp::kMul: return f * need_g();
    case PointwiseOp::kScale: return c * f;
    case PointwiseOp::kAbs: return abs(f);
    case PointwiseOp::kConj: return conj(f);
    case PointwiseOp::kReflect: return reflect(f);
    case PointwiseOp::kInvolution: return involution(f);
  }
  throw ArgumentError("unknown pointwise op");
}

GridFunction translate_cells(const GridFunction& f, std::span<const std::int64_t> shift) {
  const DomainSpec& dom = f.domain();
  if (shift.size() != dom.rank()) throw DomainError("translation rank does not match domain rank");
  for (std::size_t a = 0; a < dom.rank(); ++a) {
    if (!dom.wraps(a) && std::abs(shift[a]) >= static_cast<std::int64_t>(dom.shape()[a]))
      throw SupportError("translation outside the representable range of a non-wrapping axis");
  }
  std::vector<int> sign(dom.rank(), 1);
  std::vector<std::int64_t> offset(dom.rank());
  for (std::size_t a = 0; a < dom.rank(); ++a) offset[a] = -shift[a];
  return remap(f, sign, offset, 0.0);
}

GridFunction translate(const GridFunction& f, std::span<const double> t) {
  double snap = 0.0;
  const CellIndex cells = f.domain().snap_translation(t, &snap);
  GridFunction out = translate_cells(f, cells);
  if (snap > 0.0) {
    SampleMetadata meta = out.metadata();
    meta.snap_distance = std::max(meta.snap_distance, snap);
    return out.with_metadata(std::move(meta));
  }
  return out;
}

double sup_norm(const GridFunction& f) {
  const DomainSpec& dom = f.domain();
  double best = 0.0;
  const bool clean = f.clean();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!clean && !within_valid(f, dom.unflatten(i))) continue;
    best = std::max(best, std::abs(f[i]));
  }
  return best;
}

}  // namespace apkit
