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

#include "apkit/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apkit/box_sum.hpp"
#include "apkit/error.hpp"
#include "apkit/parallel.hpp"

namespace apkit {
namespace {

bool box_fits(const GridFunction& f, const CellBox& box) {
  const DomainSpec& dom = f.domain();
  for (std::size_t a = 0; a < dom.rank(); ++a) {
    if (dom.wraps(a)) continue;
    const auto [vlo, vhi] = f.valid_range(a);
    if (box.start[a] < vlo || box.start[a] + static_cast<std::int64_t>(box.count[a]) > vhi) return false;
  }
  return true;
}

std::size_t resolve_n_max(const VanHoveSequence& seq, std::size_t n_max) {
  const std::size_t n = n_max == 0 ? seq.n_max() : n_max;
  if (n == 0) throw ArgumentError("n_max must be positive");
  return n;
}

void check_rank(const GridFunction& f, const VanHoveSequence& seq) {
  if (seq.rank() != f.domain().rank()) throw DomainError("van Hove sequence rank does not match domain rank");
}

std::vector<Point> with_origin(const std::vector<Point>& probes, std::size_t rank) {
  std::vector<Point> out;
  out.emplace_back(rank, 0.0);
  for (const Point& y : probes) {
    if (y.size() != rank) throw DomainError("probe point rank does not match domain rank");
    if (y != out.front()) out.push_back(y);
  }
  return out;
}

double root(double mean, double p) {
  if (mean <= 0.0) return 0.0;
  if (p == 1.0) return mean;
  if (p == 2.0) return std::sqrt(mean);
  return std::exp(std::log(mean) / p);
}

// Window means over y + A_n for every probe and n = 1..n_max, truncated at
// the first n where some probe's box leaves the valid samples.
template <typename Table, typename Value>
std::vector<std::vector<Value>> probe_means(const GridFunction& f, const Table& table, const VanHoveSequence& seq,
                                            const std::vector<Point>& probes, std::size_t n_max) {
  const DomainSpec& dom = f.domain();
  std::vector<std::vector<Value>> out(probes.size());
  for (std::size_t n = 1; n <= n_max; ++n) {
    const Window w = seq.window(n);
    std::vector<CellBox> boxes;
    boxes.reserve(probes.size());
    bool ok = true;
    for (const Point& y : probes) {
      boxes.push_back(to_cells(dom, w.translated(y)));
      if (!box_fits(f, boxes.back())) ok = false;
    }
    if (!ok) break;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const auto s = table.sum(boxes[i].start, boxes[i].count);
      out[i].push_back(s / static_cast<long double>(boxes[i].cells()));
    }
  }
  return out;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kConverged: return "converged";
    case Verdict::kNotConverged: return "not-converged";
    case Verdict::kSupportExhausted: return "support-exhausted";
  }
  return "?";
}

void finalize_estimate(MeanEstimate& e) {
  if (e.per_n.empty()) throw SupportError("no van Hove window fits the valid samples");
  e.n_available = e.per_n.size();
  e.value = e.per_n.back().estimate;
  const std::size_t first = (e.n_available + 1) / 2;  // 0-based index of n = ceil(n_available / 2)
  const std::size_t lo = first == 0 ? 0 : first - 1;
  double gap = 0.0;
  for (std::size_t i = lo; i < e.per_n.size(); ++i)
    for (std::size_t j = i + 1; j < e.per_n.size(); ++j)
      gap = std::max(gap, std::abs(e.per_n[i].estimate - e.per_n[j].estimate));
  e.cauchy_gap = gap;
  e.converged = gap < e.tol * std::max(1.0, std::abs(e.value));
  if (e.n_available < e.n_requested)
    e.verdict = Verdict::kSupportExhausted;
  else
    e.verdict = e.converged ? Verdict::kConverged : Verdict::kNotConverged;
}

Complex window_mean(const GridFunction& f, const Point& y, const Window& w) {
  const DomainSpec& dom = f.domain();
  const CellBox box = to_cells(dom, w.translated(y));
  if (!box_fits(f, box)) throw SupportError("window leaves the valid samples");
  std::vector<std::complex<long double>> vals(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) vals[i] = {f[i].real(), f[i].imag()};
  const ComplexBoxSum table(dom, vals);
  const auto s = table.sum(box.start, box.count) / static_cast<long double>(box.cells());
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

MeanEstimate van_hove_mean(const GridFunction& f, const VanHoveSequence& seq, const std::vector<Point>& probe_ys,
                           std::size_t n_max, double tol) {
  check_rank(f, seq);
  n_max = resolve_n_max(seq, n_max);
  const std::vector<Point> probes = with_origin(probe_ys, f.domain().rank());
  std::vector<std::complex<long double>> vals(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) vals[i] = {f[i].real(), f[i].imag()};
  const ComplexBoxSum table(f.domain(), vals);
  const auto means = probe_means<ComplexBoxSum, std::complex<long double>>(f, table, seq, probes, n_max);

  MeanEstimate e;
  e.tol = tol;
  e.n_requested = n_max;
  for (std::size_t i = 0; i < means[0].size(); ++i)
    e.per_n.push_back({i + 1, Complex(static_cast<double>(means[0][i].real()),
                                      static_cast<double>(means[0][i].imag()))});
  finalize_estimate(e);
  const std::size_t last = e.n_available - 1;
  for (std::size_t p = 1; p < probes.size(); ++p) {
    const Complex v(static_cast<double>(means[p][last].real()), static_cast<double>(means[p][last].imag()));
    e.y_uniformity_gap = std::max(e.y_uniformity_gap, std::abs(v - e.value));
  }
  return e;
}

WeylSeminorm weyl_seminorm(const GridFunction& f, const VanHoveSequence& seq, double p, std::size_t n_max,
                           double tol, const std::vector<Point>& probe_ys) {
  check_rank(f, seq);
  if (!(p >= 1.0)) throw ArgumentError("p must be >= 1");
  n_max = resolve_n_max(seq, n_max);
  const std::vector<Point> probes = with_origin(probe_ys, f.domain().rank());
  std::vector<long double> vals(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) vals[i] = abs_pow(f[i], p);
  const RealBoxSum table(f.domain(), vals);
  const auto means = probe_means<RealBoxSum, long double>(f, table, seq, probes, n_max);

  WeylSeminorm out;
  out.plain.tol = out.sup.tol = tol;
  out.plain.n_requested = out.sup.n_requested = n_max;
  for (std::size_t i = 0; i < means[0].size(); ++i) {
    out.plain.per_n.push_back({i + 1, root(static_cast<double>(means[0][i]), p)});
    double best = 0.0;
    for (const auto& row : means) best = std::max(best, root(static_cast<double>(row[i]), p));
    out.sup.per_n.push_back({i + 1, best});
  }
  finalize_estimate(out.plain);
  finalize_estimate(out.sup);
  const std::size_t last = out.plain.n_available - 1;
  for (std::size_t q = 1; q < probes.size(); ++q) {
    const double v = root(static_cast<double>(means[q][last]), p);
    out.plain.y_uniformity_gap = std::max(out.plain.y_uniformity_gap, std::abs(v - out.plain.value.real()));
  }
  out.sup.y_uniformity_gap = out.plain.y_uniformity_gap;
  return out;
}

namespace {

// ||g||_{S^p_{A_n}} for n = 1.. until no A_n-shaped window fits.
std::vector<double> stepanov_family(const GridFunction& g, const VanHoveSequence& seq, double p,
                                    std::size_t n_max) {
  const DomainSpec& dom = g.domain();
  const std::size_t d = dom.rank();
  std::vector<long double> vals(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) vals[i] = abs_pow(g[i], p);
  const RealBoxSum table(dom, vals);
  std::vector<double> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::vector<std::size_t> count = cell_counts(dom, seq.window(n));
    CellIndex lo(d), hi(d);
    bool ok = true;
    std::size_t cells = 1;
    for (std::size_t a = 0; a < d; ++a) {
      cells *= count[a];
      if (dom.wraps(a)) {
        lo[a] = 0;
        hi[a] = static_cast<std::int64_t>(dom.shape()[a]) - 1;
        continue;
      }
      const auto [vlo, vhi] = g.valid_range(a);
      lo[a] = vlo;
      hi[a] = vhi - static_cast<std::int64_t>(count[a]);
      if (hi[a] < lo[a]) ok = false;
    }
    if (!ok) break;
    long double best = 0.0L;
    if (d == 1) {
      for (std::int64_t s = lo[0]; s <= hi[0]; ++s) best = std::max(best, table.sum_1d(s, count[0]));
    } else {
      CellIndex start = lo;
      for (;;) {
        best = std::max(best, table.sum(start, count));
        std::size_t a = d;
        while (a-- > 0) {
          if (++start[a] <= hi[a]) break;
          start[a] = lo[a];
        }
        if (a == static_cast<std::size_t>(-1)) break;
      }
    }
    out.push_back(root(static_cast<double>(best / static_cast<long double>(cells)), p));
  }
  return out;
}

}  // namespace

EquiWeylReport equi_weyl_scan(const GridFunction& f, const VanHoveSequence& seq, double p, double epsilon,
                              const ScanRange& range, double gap_bound, std::size_t n_max) {
  check_rank(f, seq);
  if (!(p >= 1.0)) throw ArgumentError("p must be >= 1");
  n_max = resolve_n_max(seq, n_max);
  const DomainSpec& dom = f.domain();
  const std::vector<CellIndex> cand = scan_translations(dom, range);
  const std::vector<std::vector<double>> dist = parallel_map(cand.size(), [&](std::size_t i) {
    return stepanov_family(f - translate_cells(f, cand[i]), seq, p, n_max);
  });

  EquiWeylReport out;
  out.report.epsilon = epsilon;
  out.report.norm_kind = NormKind::kEquiWeyl;
  out.report.p = p;
  out.report.scan_range = range;
  out.report.gap_bound = gap_bound;
  out.report.candidates = cand.size();
  std::size_t n_avail = n_max;
  for (const auto& d : dist) n_avail = std::min(n_avail, d.size());
  out.n_available = n_avail;
  out.support_exhausted = n_avail < n_max;
  for (const CellIndex& c : cand) out.candidates.push_back(translation_point(dom, c));
  out.per_t_n.assign(cand.size(), 0);
  out.distance_at_n.assign(cand.size(), std::numeric_limits<double>::infinity());
  if (n_avail == 0) {
    out.report.max_gap = std::numeric_limits<double>::infinity();
    return out;
  }
  out.report.k = seq.window(n_avail);
  for (std::size_t i = 0; i < cand.size(); ++i) {
    out.distance_at_n[i] = dist[i][n_avail - 1];
    std::size_t n = n_avail;
    while (n >= 1 && dist[i][n - 1] < epsilon) --n;
    out.per_t_n[i] = n == n_avail ? 0 : n + 1;
  }

  std::vector<std::size_t> levels;
  for (std::size_t v : out.per_t_n)
    if (v > 0) levels.push_back(v);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  auto periods_at = [&](std::size_t level) {
    std::vector<AlmostPeriod> ps;
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (out.per_t_n[i] > 0 && out.per_t_n[i] <= level) ps.push_back({out.candidates[i], out.distance_at_n[i]});
    return ps;
  };
  for (std::size_t level : levels) {
    std::vector<AlmostPeriod> ps = periods_at(level);
    const double gap = period_max_gap(dom, range, ps);
    if (gap <= gap_bound) {
      out.uniform_n = level;
      out.report.periods = std::move(ps);
      out.report.max_gap = gap;
      out.report.relatively_dense = true;
      return out;
    }
  }
  out.uniform_n = levels.empty() ? 0 : levels.back();
  out.report.periods = periods_at(out.uniform_n);
  out.report.max_gap = period_max_gap(dom, range, out.report.periods);
  out.report.relatively_dense = false;
  return out;
}

AlmostPeriodKernel almost_period_kernel(const GridFunction& f, const VanHoveSequence& seq, double p,
                                        double eps_prime, std::size_t n_prime,
                                        const std::optional<ScanRange>& range, std::size_t n_max) {
  check_rank(f, seq);
  n_max = resolve_n_max(seq, n_max);
  if (n_prime == 0) throw ArgumentError("n_prime must be positive");
  const DomainSpec& dom = f.domain();
  const std::size_t d = dom.rank();
  ScanRange r;
  if (range) {
    r = *range;
  } else {
    const Window w = seq.window(n_max);
    const CellBox box = to_cells(dom, w);
    r.lo.resize(d);
    r.hi.resize(d);
    for (std::size_t a = 0; a < d; ++a) {
      r.lo[a] = static_cast<double>(box.start[a]) * dom.axis(a).h;
      r.hi[a] = static_cast<double>(box.start[a] + static_cast<std::int64_t>(box.count[a]) - 1) * dom.axis(a).h;
    }
  }
  const std::vector<CellIndex> cand = scan_translations(dom, r);
  if (cand.empty()) throw ArgumentError("empty scan range for the almost-period kernel");
  const Window kwin = seq.window(n_prime);
  const std::vector<double> dist = parallel_map(cand.size(), [&](std::size_t i) {
    CellIndex back(d);
    for (std::size_t a = 0; a < d; ++a) back[a] = -cand[i][a];
    return translation_distance(f, back, kwin, p);
  });

  AlmostPeriodKernel out;
  out.candidates = cand.size();
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (dist[i] < eps_prime) {
      ++out.members;
      out.almost_periods.push_back(translation_point(dom, cand[i]));
    }
  }
  if (out.members == 0) throw ArgumentError("no almost period below eps_prime in the scan range");
  out.density = static_cast<double>(out.members) / static_cast<double>(out.candidates);

  // kernel lives on the box of scanned z, one sample per candidate
  std::vector<Axis> axes(d);
  std::vector<std::int64_t> lo(d);
  std::vector<std::size_t> count(d);
  for (std::size_t a = 0; a < d; ++a) {
    lo[a] = cand.front()[a];
    count[a] = static_cast<std::size_t>(cand.back()[a] - cand.front()[a]) + 1;
    const Axis& src = dom.axis(a);
    Axis ax;
    ax.kind = src.discrete() ? AxisKind::kInteger : AxisKind::kReal;
    ax.h = src.h;
    ax.n = count[a];
    ax.origin = src.discrete() ? static_cast<double>(lo[a]) : (static_cast<double>(lo[a]) - 0.5) * src.h;
    axes[a] = ax;
  }
  DomainKind kind = d > 1 ? DomainKind::kProduct
                          : (axes[0].kind == AxisKind::kInteger ? DomainKind::kIntegerLattice : DomainKind::kRealGrid);
  DomainSpec kdom(kind, axes, BoundaryMode::kZeroExtend);
  std::vector<Complex> vals(kdom.size(), Complex{});
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (!(dist[i] < eps_prime)) continue;
    CellIndex local(d);
    for (std::size_t a = 0; a < d; ++a) local[a] = cand[i][a] - lo[a];
    vals[kdom.flat_index(local)] = 1.0 / out.density;
  }
  SampleMetadata meta;
  meta.contaminated.assign(d, Margin{});
  meta.compact_support = true;
  meta.provenance = "almost-period-kernel";
  out.kernel = GridFunction(kdom, std::move(vals), std::move(meta));
  return out;
}

SmoothResult weyl_smooth(const GridFunction& f, const AlmostPeriodKernel& kernel, const VanHoveSequence& seq,
                         std::size_t n_max) {
  check_rank(f, seq);
  n_max = resolve_n_max(seq, n_max);
  const DomainSpec& dom = f.domain();
  const std::size_t d = dom.rank();
  const Window w = seq.window(n_max);
  const CellBox abox = to_cells(dom, w);

  struct Term {
    CellIndex z;
    double weight;
  };
  std::vector<Term> terms;
  const DomainSpec& kdom = kernel.kernel.domain();
  if (kdom.rank() != d) throw DomainError("kernel rank does not match domain rank");
  for (std::size_t i = 0; i < kernel.kernel.size(); ++i) {
    const double k = kernel.kernel[i].real();
    if (k == 0.0) continue;
    const Point zp = kdom.point(i);
    CellIndex z = dom.snap_translation(zp);
    bool inside = true;
    for (std::size_t a = 0; a < d; ++a)
      if (z[a] < abox.start[a] || z[a] >= abox.start[a] + static_cast<std::int64_t>(abox.count[a])) inside = false;
    if (inside) terms.push_back({z, k});
  }
  const double theta = haar_measure(w);
  const double vol = dom.cell_volume();
  SmoothResult out;
  double kmass = 0.0;
  for (const Term& t : terms) kmass += t.weight;
  out.kernel_mean = kmass * vol / theta;

  std::vector<std::int64_t> zmin(d, 0), zmax(d, 0);
  for (std::size_t a = 0; a < d; ++a) {
    if (terms.empty()) break;
    zmin[a] = zmax[a] = terms.front().z[a];
    for (const Term& t : terms) {
      zmin[a] = std::min(zmin[a], t.z[a]);
      zmax[a] = std::max(zmax[a], t.z[a]);
    }
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> valid(d);
  for (std::size_t a = 0; a < d; ++a) valid[a] = f.valid_range(a);

  std::vector<Complex> vals = parallel_map(f.size(), [&](std::size_t flat) {
    const CellIndex x = dom.unflatten(flat);
    CellIndex src(d);
    std::vector<double> re, im;
    re.reserve(terms.size());
    im.reserve(terms.size());
    for (const Term& t : terms) {
      bool ok = true;
      for (std::size_t a = 0; a < d; ++a) {
        src[a] = x[a] + t.z[a];
        if (!dom.wraps(a) && (src[a] < valid[a].first || src[a] >= valid[a].second)) ok = false;
      }
      if (!ok) continue;
      const Complex v = f[dom.flat_index(src)] * t.weight;
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    return Complex(pairwise_sum(re), pairwise_sum(im)) * (vol / theta);
  });

  SampleMetadata meta;
  meta.contaminated.assign(d, Margin{});
  meta.provenance = "weyl-smooth";
  meta.snap_distance = f.metadata().snap_distance;
  for (std::size_t a = 0; a < d; ++a) {
    if (dom.wraps(a) || terms.empty()) continue;
    const auto n = static_cast<std::int64_t>(dom.shape()[a]);
    const std::int64_t first_ok = valid[a].first - zmin[a];
    const std::int64_t end_ok = valid[a].second - zmax[a];
    meta.contaminated[a].lo = static_cast<std::size_t>(std::clamp<std::int64_t>(first_ok, 0, n));
    meta.contaminated[a].hi = static_cast<std::size_t>(std::clamp<std::int64_t>(n - end_ok, 0, n));
  }
  out.phi = GridFunction(dom, std::move(vals), std::move(meta));

  double modulus = 0.0;
  for (std::size_t flat = 0; flat < out.phi.size(); ++flat) {
    const CellIndex x = dom.unflatten(flat);
    bool xin = true;
    for (std::size_t a = 0; a < d; ++a) {
      const auto [lo, hi] = out.phi.valid_range(a);
      if (x[a] < lo || x[a] >= hi) xin = false;
    }
    if (!xin) continue;
    for (std::size_t a = 0; a < d; ++a) {
      CellIndex y = x;
      ++y[a];
      const auto [lo, hi] = out.phi.valid_range(a);
      if (!dom.wraps(a) && y[a] >= hi) continue;
      modulus = std::max(modulus, std::abs(out.phi[dom.flat_index(y)] - out.phi[flat]));
    }
  }
  out.modulus = modulus;
  return out;
}

}  // namespace apkit
