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

#include "apkit/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "apkit/box_sum.hpp"
#include "apkit/error.hpp"
#include "apkit/parallel.hpp"

namespace apkit {
namespace {

void check_compatible_axes(const DomainSpec& a, const DomainSpec& b) {
  if (a.rank() != b.rank()) throw DomainError("convolution factors have different ranks");
  for (std::size_t i = 0; i < a.rank(); ++i) {
    const Axis& x = a.axis(i);
    const Axis& y = b.axis(i);
    if (x.kind != y.kind) throw DomainError("convolution factors have different axis kinds");
    if (std::abs(x.h - y.h) > 1e-12 * std::max(x.h, y.h)) throw DomainError("convolution needs equal cell widths");
    if (a.wraps(i) != b.wraps(i)) throw DomainError("convolution factors disagree on wrapping");
    if (a.wraps(i) && x.n != y.n) throw DomainError("circular convolution needs equal periods");
  }
}

std::int64_t wrap_index(std::int64_t i, std::int64_t n) {
  std::int64_t r = i % n;
  return r < 0 ? r + n : r;
}

}  // namespace

GridFunction convolve(const GridFunction& f, const GridFunction& g) {
  const DomainSpec& df = f.domain();
  const DomainSpec& dg = g.domain();
  check_compatible_axes(df, dg);
  const std::size_t d = df.rank();
  bool any_open = false;
  for (std::size_t a = 0; a < d; ++a)
    if (!df.wraps(a)) any_open = true;
  const bool fc = f.metadata().compact_support;
  const bool gc = g.metadata().compact_support;
  if (any_open && !fc && !gc)
    throw DomainError("convolution on a non-wrapping domain needs a compactly supported factor");

  std::vector<Axis> axes(d);
  for (std::size_t a = 0; a < d; ++a) {
    const Axis& x = df.axis(a);
    const Axis& y = dg.axis(a);
    Axis out = x;
    out.origin = x.origin + y.origin + (x.discrete() ? 0.0 : 0.5 * x.h);
    if (!df.wraps(a)) out.n = x.n + y.n - 1;
    axes[a] = out;
  }
  const BoundaryMode mode =
      df.boundary_mode() == BoundaryMode::kZeroExtend || dg.boundary_mode() == BoundaryMode::kZeroExtend
          ? BoundaryMode::kZeroExtend
          : BoundaryMode::kWrap;
  DomainSpec dout(df.kind(), axes, mode);
  const double vol = df.cell_volume();

  std::vector<Complex> vals = parallel_map(dout.size(), [&](std::size_t flat) {
    const CellIndex k = dout.unflatten(flat);
    CellIndex i(d);
    std::vector<double> re, im;
    re.reserve(g.size());
    im.reserve(g.size());
    for (std::size_t jf = 0; jf < g.size(); ++jf) {
      if (g[jf] == Complex{}) continue;
      const CellIndex j = dg.unflatten(jf);
      bool ok = true;
      for (std::size_t a = 0; a < d; ++a) {
        const auto n = static_cast<std::int64_t>(df.shape()[a]);
        i[a] = k[a] - j[a];
        if (df.wraps(a))
          i[a] = wrap_index(i[a], n);
        else if (i[a] < 0 || i[a] >= n)
          ok = false;
      }
      if (!ok) continue;
      const Complex v = f[df.flat_index(i)] * g[jf];
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    return Complex(pairwise_sum(re), pairwise_sum(im)) * vol;
  });

  SampleMetadata meta;
  meta.contaminated.assign(d, Margin{});
  meta.compact_support = fc && gc;
  meta.snap_distance = std::max(f.metadata().snap_distance, g.metadata().snap_distance);
  meta.provenance = "convolution";
  if (!(fc && gc)) {
    // the non-compact factor's valid range, widened by the other factor's extent
    const GridFunction& open = fc ? g : f;
    const GridFunction& comp = fc ? f : g;
    for (std::size_t a = 0; a < d; ++a) {
      if (df.wraps(a)) continue;
      const auto n_out = static_cast<std::int64_t>(dout.shape()[a]);
      const auto [vlo, vhi] = open.valid_range(a);
      const auto extra = static_cast<std::int64_t>(comp.domain().shape()[a]) - 1;
      const std::int64_t lo = vlo + extra;
      meta.contaminated[a].lo = static_cast<std::size_t>(std::clamp<std::int64_t>(lo, 0, n_out));
      meta.contaminated[a].hi = static_cast<std::size_t>(std::clamp<std::int64_t>(n_out - vhi, 0, n_out));
    }
  }
  return GridFunction(dout, std::move(vals), std::move(meta));
}

GridFunction convolve_measure(const GridFunction& f, const AtomicMeasure& mu) {
  if (mu.atoms().empty()) return GridFunction::zeros(f.domain());
  std::optional<GridFunction> acc;
  for (const Atom& atom : mu.atoms()) {
    GridFunction term = atom.weight * translate(f, atom.position);
    acc = acc ? *acc + term : term;
  }
  return acc->with_provenance("measure-convolution");
}

namespace {

// Index arithmetic for f(x - y) with y on the sample grid: f is read at
// cell base - j on every axis.
CellIndex eberlein_base(const DomainSpec& dom, const Point& x, double* snap) {
  const std::size_t d = dom.rank();
  CellIndex base(d);
  double s2 = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    const Axis& ax = dom.axis(a);
    const double exact = ax.discrete() ? (x[a] - 2.0 * ax.origin) : (x[a] - 2.0 * ax.origin) / ax.h - 1.0;
    base[a] = static_cast<std::int64_t>(std::llround(exact));
    const double moved = (exact - static_cast<double>(base[a])) * (ax.discrete() ? 1.0 : ax.h);
    s2 += moved * moved;
  }
  *snap = std::sqrt(s2);
  return base;
}

// Valid j range per axis: g readable at j and f readable at base - j.
std::vector<std::pair<std::int64_t, std::int64_t>> eberlein_valid(const GridFunction& f, const GridFunction& g,
                                                                  const CellIndex& base) {
  const DomainSpec& dom = f.domain();
  std::vector<std::pair<std::int64_t, std::int64_t>> out(dom.rank());
  for (std::size_t a = 0; a < dom.rank(); ++a) {
    if (dom.wraps(a)) {
      out[a] = {std::numeric_limits<std::int64_t>::min() / 4, std::numeric_limits<std::int64_t>::max() / 4};
      continue;
    }
    auto [glo, ghi] = g.valid_range(a);
    auto [flo, fhi] = f.valid_range(a);
    std::int64_t lo = glo, hi = ghi;
    if (!f.metadata().compact_support) {
      lo = std::max(lo, base[a] - fhi + 1);
      hi = std::min(hi, base[a] - flo + 1);
    }
    out[a] = {lo, hi};
  }
  return out;
}

// f(base - j) g(j) on a cell j of the domain (0 where a compact f runs out).
Complex eberlein_term(const GridFunction& f, const GridFunction& g, const CellIndex& base, const CellIndex& j) {
  const DomainSpec& dom = f.domain();
  CellIndex i(dom.rank());
  for (std::size_t a = 0; a < dom.rank(); ++a) {
    i[a] = base[a] - j[a];
    if (dom.wraps(a)) continue;
    const auto n = static_cast<std::int64_t>(dom.shape()[a]);
    if (i[a] < 0 || i[a] >= n) return Complex{};
  }
  return f[dom.flat_index(i)] * g[dom.flat_index(j)];
}

}  // namespace

EberleinEstimate eberlein(const GridFunction& f, const GridFunction& g, const VanHoveSequence& seq,
                          const std::vector<Point>& points, std::size_t n_max, double tol) {
  require_same_domain(f, g);
  const DomainSpec& dom = f.domain();
  const std::size_t d = dom.rank();
  if (seq.rank() != d) throw DomainError("van Hove sequence rank does not match domain rank");
  n_max = n_max == 0 ? seq.n_max() : n_max;
  std::vector<Window> wins;
  for (std::size_t n = 1; n <= n_max; ++n) wins.push_back(seq.window(n));

  EberleinEstimate out;
  out.points = points;
  std::vector<double> snaps(points.size(), 0.0);
  out.estimates = parallel_map(points.size(), [&](std::size_t pi) {
    if (points[pi].size() != d) throw DomainError("evaluation point rank does not match domain rank");
    const CellIndex base = eberlein_base(dom, points[pi], &snaps[pi]);
    const auto valid = eberlein_valid(f, g, base);
    std::vector<std::complex<long double>> prod(dom.size());
    for (std::size_t j = 0; j < dom.size(); ++j) {
      const Complex v = eberlein_term(f, g, base, dom.unflatten(j));
      prod[j] = {v.real(), v.imag()};
    }
    const ComplexBoxSum table(dom, prod);
    MeanEstimate e;
    e.tol = tol;
    e.n_requested = n_max;
    for (std::size_t n = 1; n <= n_max; ++n) {
      const CellBox box = to_cells(dom, wins[n - 1]);
      bool ok = true;
      for (std::size_t a = 0; a < d; ++a) {
        if (dom.wraps(a)) continue;
        if (box.start[a] < valid[a].first || box.start[a] + static_cast<std::int64_t>(box.count[a]) > valid[a].second)
          ok = false;
      }
      if (!ok) break;
      const auto s = table.sum(box.start, box.count) / static_cast<long double>(box.cells());
      e.per_n.push_back({n, Complex(static_cast<double>(s.real()), static_cast<double>(s.imag()))});
    }
    finalize_estimate(e);
    return e;
  });
  auto rank_of = [](Verdict v) { return v == Verdict::kConverged ? 0 : v == Verdict::kNotConverged ? 1 : 2; };
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.max_cauchy_gap = std::max(out.max_cauchy_gap, out.estimates[i].cauchy_gap);
    if (rank_of(out.estimates[i].verdict) > rank_of(out.verdict)) out.verdict = out.estimates[i].verdict;
    out.snap_distance = std::max(out.snap_distance, snaps[i]);
  }
  return out;
}

GridFunction eberlein_materialize(const GridFunction& f, const GridFunction& g, const VanHoveSequence& seq,
                                  std::size_t n_max) {
  require_same_domain(f, g);
  const DomainSpec& dom = f.domain();
  const std::size_t d = dom.rank();
  if (seq.rank() != d) throw DomainError("van Hove sequence rank does not match domain rank");
  n_max = n_max == 0 ? seq.n_max() : n_max;
  const CellBox box = to_cells(dom, seq.window(n_max));
  std::vector<char> ok_flags(dom.size(), 1);
  std::vector<double> snaps(dom.size(), 0.0);
  std::vector<Complex> vals = parallel_map(dom.size(), [&](std::size_t flat) {
    const CellIndex base = eberlein_base(dom, dom.point(flat), &snaps[flat]);
    const auto valid = eberlein_valid(f, g, base);
    for (std::size_t a = 0; a < d; ++a) {
      if (dom.wraps(a)) continue;
      if (box.start[a] < valid[a].first || box.start[a] + static_cast<std::int64_t>(box.count[a]) > valid[a].second)
        ok_flags[flat] = 0;
    }
    std::vector<double> re, im;
    re.reserve(box.cells());
    im.reserve(box.cells());
    CellIndex j(d);
    CellIndex off(d, 0);
    for (std::size_t c = 0; c < box.cells(); ++c) {
      bool inside = true;
      for (std::size_t a = 0; a < d; ++a) {
        j[a] = box.start[a] + off[a];
        if (!dom.wraps(a) && (j[a] < 0 || j[a] >= static_cast<std::int64_t>(dom.shape()[a]))) inside = false;
      }
      if (inside) {
        const Complex v = eberlein_term(f, g, base, j);
        re.push_back(v.real());
        im.push_back(v.imag());
      }
      for (std::size_t a = d; a-- > 0;) {
        if (++off[a] < static_cast<std::int64_t>(box.count[a])) break;
        off[a] = 0;
      }
    }
    return Complex(pairwise_sum(re), pairwise_sum(im)) / static_cast<double>(box.cells());
  });

  SampleMetadata meta;
  meta.contaminated.assign(d, Margin{});
  meta.provenance = "eberlein";
  for (double s : snaps) meta.snap_distance = std::max(meta.snap_distance, s);
  // validity factorizes over axes, so the bad cells form a frame
  for (std::size_t a = 0; a < d; ++a) {
    if (dom.wraps(a)) continue;
    const auto n = static_cast<std::int64_t>(dom.shape()[a]);
    std::vector<char> axis_ok(static_cast<std::size_t>(n), 0);
    for (std::size_t flat = 0; flat < dom.size(); ++flat)
      if (ok_flags[flat]) axis_ok[static_cast<std::size_t>(dom.unflatten(flat)[a])] = 1;
    std::int64_t lo = 0;
    while (lo < n && !axis_ok[static_cast<std::size_t>(lo)]) ++lo;
    std::int64_t hi = n;
    while (hi > lo && !axis_ok[static_cast<std::size_t>(hi - 1)]) --hi;
    meta.contaminated[a] = {static_cast<std::size_t>(lo), static_cast<std::size_t>(n - hi)};
  }
  return GridFunction(dom, std::move(vals), std::move(meta));
}

}  // namespace apkit
