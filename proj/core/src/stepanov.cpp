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

#include "apkit/stepanov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apkit/box_sum.hpp"
#include "apkit/error.hpp"
#include "apkit/fourier_bohr.hpp"
#include "apkit/parallel.hpp"
#include "apkit/weyl.hpp"

namespace apkit {
namespace {

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ArgumentError("p must be a finite real >= 1");
}

double root(double mean, double p) {
  if (mean <= 0.0) return 0.0;
  if (p == 1.0) return mean;
  if (p == 2.0) return std::sqrt(mean);
  return std::exp(std::log(mean) / p);
}

struct StartRange {
  std::int64_t lo;
  std::int64_t hi;  // inclusive
};

// Admissible window starts per axis for a window of `count` cells.
std::vector<StartRange> admissible_starts(const GridFunction& f, const std::vector<std::size_t>& count) {
  const DomainSpec& dom = f.domain();
  std::vector<StartRange> out(dom.rank());
  for (std::size_t a = 0; a < dom.rank(); ++a) {
    if (dom.wraps(a)) {
      out[a] = {0, static_cast<std::int64_t>(dom.shape()[a]) - 1};
      continue;
    }
    const auto [vlo, vhi] = f.valid_range(a);
    const std::int64_t last = vhi - static_cast<std::int64_t>(count[a]);
    if (last < vlo) throw SupportError("empty admissible scan set: window does not fit the valid support");
    out[a] = {vlo, last};
  }
  return out;
}

// Contaminated cells are never inside an admissible window; they are zeroed
// so that large junk values there cannot cancel away precision in the table.
std::vector<long double> abs_pow_values(const GridFunction& f, double p) {
  std::vector<long double> v(f.size());
  const bool clean = f.clean();
  const DomainSpec& dom = f.domain();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!clean) {
      const CellIndex cell = dom.unflatten(i);
      bool valid = true;
      for (std::size_t a = 0; a < dom.rank() && valid; ++a) {
        const auto [lo, hi] = f.valid_range(a);
        valid = cell[a] >= lo && cell[a] < hi;
      }
      if (!valid) continue;
    }
    v[i] = abs_pow(f[i], p);
  }
  return v;
}

}  // namespace

double abs_pow(Complex z, double p) {
  if (p == 1.0) return std::abs(z);
  if (p == 2.0) return std::norm(z);
  const double a = std::abs(z);
  if (a == 0.0) return 0.0;
  return std::exp(p * std::log(a));
}

double window_lp_mean(const GridFunction& f, const Point& y, const Window& k, double p) {
  check_p(p);
  const DomainSpec& dom = f.domain();
  if (y.size() != dom.rank()) throw DomainError("point rank does not match domain rank");
  CellBox box = to_cells(dom, k.translated(y));
  for (std::size_t a = 0; a < dom.rank(); ++a) {
    if (dom.wraps(a)) continue;
    const auto [vlo, vhi] = f.valid_range(a);
    if (box.start[a] < vlo || box.start[a] + static_cast<std::int64_t>(box.count[a]) > vhi)
      throw SupportError("window escapes the valid support of a non-wrapping domain");
  }
  std::vector<double> terms;
  terms.reserve(box.cells());
  CellIndex off(dom.rank(), 0);
  CellIndex cell(dom.rank());
  for (std::size_t i = 0; i < box.cells(); ++i) {
    for (std::size_t a = 0; a < dom.rank(); ++a) cell[a] = box.start[a] + off[a];
    terms.push_back(abs_pow(f[dom.flat_index(cell)], p));
    for (std::size_t a = dom.rank(); a-- > 0;) {
      if (++off[a] < static_cast<std::int64_t>(box.count[a])) break;
      off[a] = 0;
    }
  }
  return root(pairwise_sum(terms) / static_cast<double>(terms.size()), p);
}

StepanovNorm stepanov_norm(const GridFunction& f, const Window& k, double p) {
  check_p(p);
  const DomainSpec& dom = f.domain();
  const std::vector<std::size_t> count = cell_counts(dom, k);
  const std::vector<StartRange> starts = admissible_starts(f, count);
  const std::vector<long double> values = abs_pow_values(f, p);
  const RealBoxSum table(dom, values);
  std::size_t cells = 1;
  for (std::size_t c : count) cells *= c;
  const long double inv = 1.0L / static_cast<long double>(cells);

  std::size_t total = 1;
  for (const StartRange& s : starts) total *= static_cast<std::size_t>(s.hi - s.lo + 1);

  long double best = -1.0L;
  CellIndex best_start(dom.rank());
  if (dom.rank() == 1) {
    for (std::int64_t s = starts[0].lo; s <= starts[0].hi; ++s) {
      const long double m = table.sum_1d(s, count[0]) * inv;
      if (m > best) {
        best = m;
        best_start[0] = s;
      }
    }
  } else {
    CellIndex start(dom.rank());
    for (std::size_t a = 0; a < dom.rank(); ++a) start[a] = starts[a].lo;
    for (std::size_t i = 0; i < total; ++i) {
      const long double m = table.sum(start, count) * inv;
      if (m > best) {
        best = m;
        best_start = start;
      }
      for (std::size_t a = dom.rank(); a-- > 0;) {
        if (++start[a] <= starts[a].hi) break;
        start[a] = starts[a].lo;
      }
    }
  }
  StepanovNorm out;
  // prefix differences can leave tiny negative residue on an all-zero window
  out.value = root(std::max(0.0, static_cast<double>(best)), p);
  out.argmax.resize(dom.rank());
  double res = 0.0;
  for (std::size_t a = 0; a < dom.rank(); ++a) {
    out.argmax[a] = dom.axis(a).edge(best_start[a]) - k.offset[a];
    res = std::max(res, dom.axis(a).h);
  }
  out.windows = total;
  out.resolution = res;
  return out;
}

double stepanov_distance(const GridFunction& f, const GridFunction& g, const Window& k, double p) {
  return stepanov_norm(f - g, k, p).value;
}

double translation_distance(const GridFunction& f, std::span<const std::int64_t> shift, const Window& k,
                            double p) {
  return stepanov_norm(f - translate_cells(f, shift), k, p).value;
}

EquivalenceBounds equivalence_bounds(const Window& k1, const Window& k2, double p) {
  check_p(p);
  if (k1.rank() != k2.rank()) throw ArgumentError("windows have different ranks");
  EquivalenceBounds b;
  b.n_cover = 1;
  b.n_cover_reverse = 1;
  for (std::size_t a = 0; a < k1.rank(); ++a) {
    if (!(k1.side[a] > 0.0) || !(k2.side[a] > 0.0)) throw ArgumentError("windows need positive sides");
    const double r = k1.side[a] / k2.side[a];
    const double rr = k2.side[a] / k1.side[a];
    b.n_cover *= static_cast<std::size_t>(std::ceil(r * (1.0 - 1e-12)));
    b.n_cover_reverse *= static_cast<std::size_t>(std::ceil(rr * (1.0 - 1e-12)));
  }
  const double m1 = haar_measure(k1);
  const double m2 = haar_measure(k2);
  b.c2 = std::pow(static_cast<double>(b.n_cover) * m2 / m1, 1.0 / p);
  b.c1 = 1.0 / std::pow(static_cast<double>(b.n_cover_reverse) * m1 / m2, 1.0 / p);
  return b;
}

std::vector<CellIndex> scan_translations(const DomainSpec& domain, const ScanRange& range) {
  const std::size_t d = domain.rank();
  if (range.lo.size() != d || range.hi.size() != d) throw DomainError("scan range rank does not match domain");
  std::vector<std::int64_t> lo(d), hi(d), step(d, 1);
  for (std::size_t a = 0; a < d; ++a) {
    const double h = domain.axis(a).h;
    lo[a] = static_cast<std::int64_t>(std::ceil(range.lo[a] / h - 1e-9));
    hi[a] = static_cast<std::int64_t>(std::floor(range.hi[a] / h + 1e-9));
    if (!range.stride.empty()) {
      if (range.stride.size() != d || range.stride[a] == 0) throw ArgumentError("invalid scan stride");
      step[a] = static_cast<std::int64_t>(range.stride[a]);
    }
    if (hi[a] < lo[a]) return {};
  }
  std::vector<CellIndex> out;
  CellIndex t = lo;
  for (;;) {
    out.push_back(t);
    std::size_t a = d;
    while (a-- > 0) {
      t[a] += step[a];
      if (t[a] <= hi[a]) break;
      t[a] = lo[a];
    }
    if (a == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

Point translation_point(const DomainSpec& domain, std::span<const std::int64_t> shift) {
  Point t(shift.size());
  for (std::size_t a = 0; a < shift.size(); ++a) t[a] = static_cast<double>(shift[a]) * domain.axis(a).h;
  return t;
}

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::kStepanov: return "stepanov";
    case NormKind::kEquiWeyl: return "equi-weyl";
    case NormKind::kSup: return "sup";
    case NormKind::kUpperMean: return "upper-mean";
  }
  return "?";
}

double period_max_gap(const DomainSpec& domain, const ScanRange& range, const std::vector<AlmostPeriod>& periods) {
  if (periods.empty()) return std::numeric_limits<double>::infinity();
  const std::vector<CellIndex> cand = scan_translations(domain, range);
  if (domain.rank() == 1) {
    std::vector<double> pts;
    pts.reserve(periods.size() + 2);
    pts.push_back(translation_point(domain, cand.front())[0]);
    for (const AlmostPeriod& ap : periods) pts.push_back(ap.t[0]);
    pts.push_back(translation_point(domain, cand.back())[0]);
    std::sort(pts.begin(), pts.end());
    double gap = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) gap = std::max(gap, pts[i] - pts[i - 1]);
    return gap;
  }
  double radius = 0.0;
  for (const CellIndex& c : cand) {
    const Point t = translation_point(domain, c);
    double nearest = std::numeric_limits<double>::infinity();
    for (const AlmostPeriod& ap : periods) {
      double cheb = 0.0;
      for (std::size_t a = 0; a < t.size(); ++a) cheb = std::max(cheb, std::abs(t[a] - ap.t[a]));
      nearest = std::min(nearest, cheb);
    }
    radius = std::max(radius, nearest);
  }
  return 2.0 * radius;
}

AlmostPeriodReport almost_period_scan(const GridFunction& f, const Window& k, double p, double epsilon,
                                      const ScanRange& range, double gap_bound) {
  check_p(p);
  const std::vector<CellIndex> cand = scan_translations(f.domain(), range);
  const std::vector<double> dist =
      parallel_map(cand.size(), [&](std::size_t i) { return translation_distance(f, cand[i], k, p); });
  AlmostPeriodReport rep;
  rep.epsilon = epsilon;
  rep.norm_kind = NormKind::kStepanov;
  rep.p = p;
  rep.k = k;
  rep.scan_range = range;
  rep.gap_bound = gap_bound;
  rep.candidates = cand.size();
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (dist[i] < epsilon) rep.periods.push_back({translation_point(f.domain(), cand[i]), dist[i]});
  rep.max_gap = period_max_gap(f.domain(), range, rep.periods);
  rep.relatively_dense = rep.max_gap <= gap_bound;
  return rep;
}

GridFunction truncate(const GridFunction& f, double level) {
  if (!(level > 0.0)) throw ArgumentError("truncation level must be positive");
  return map(f, [level](Complex v) {
    const double a = std::abs(v);
    return a <= level ? v : v * (level / a);
  });
}

std::vector<std::size_t> mollifier_half_width(const DomainSpec& domain, double eta) {
  std::vector<std::size_t> m(domain.rank());
  for (std::size_t a = 0; a < domain.rank(); ++a) {
    const double cells = eta / domain.axis(a).h;
    if (!(cells >= 1.0 - 1e-9)) throw ArgumentError("mollifier half-width is smaller than one grid cell");
    m[a] = static_cast<std::size_t>(std::llround(cells));
  }
  return m;
}

GridFunction mollify(const GridFunction& f, double eta) {
  const DomainSpec& dom = f.domain();
  const std::vector<std::size_t> m = mollifier_half_width(dom, eta);
  const std::size_t d = dom.rank();
  std::vector<std::complex<long double>> vals(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) vals[i] = {f[i].real(), f[i].imag()};
  const ComplexBoxSum table(dom, vals);
  const bool compact = f.metadata().compact_support;
  std::size_t cells = 1;
  std::vector<std::size_t> count(d);
  for (std::size_t a = 0; a < d; ++a) {
    count[a] = 2 * m[a] + 1;
    cells *= count[a];
  }
  const long double inv = 1.0L / static_cast<long double>(cells);

  std::vector<Complex> out = parallel_map(f.size(), [&](std::size_t flat) {
    const CellIndex cell = dom.unflatten(flat);
    CellIndex start(d);
    std::vector<std::size_t> cnt = count;
    for (std::size_t a = 0; a < d; ++a) {
      start[a] = cell[a] - static_cast<std::int64_t>(m[a]);
      if (dom.wraps(a)) continue;
      // clip to the represented box; exact for compactly supported input
      const auto n = static_cast<std::int64_t>(dom.shape()[a]);
      const std::int64_t lo = std::max<std::int64_t>(start[a], 0);
      const std::int64_t hi = std::min<std::int64_t>(start[a] + static_cast<std::int64_t>(cnt[a]), n);
      start[a] = lo;
      cnt[a] = static_cast<std::size_t>(hi - lo);
    }
    const std::complex<long double> s = table.sum(start, cnt) * inv;
    return Complex(static_cast<double>(s.real()), static_cast<double>(s.imag()));
  });

  SampleMetadata meta = f.metadata();
  meta.provenance = f.metadata().provenance.empty() ? "mollified" : f.metadata().provenance + "+mollified";
  bool lossless = compact;
  if (compact) {
    // mass within m cells of a non-wrapping edge spreads outside the box
    for (std::size_t i = 0; i < f.size() && lossless; ++i) {
      if (f[i] == Complex{}) continue;
      const CellIndex cell = dom.unflatten(i);
      for (std::size_t a = 0; a < d; ++a) {
        if (dom.wraps(a)) continue;
        const auto n = static_cast<std::int64_t>(dom.shape()[a]);
        if (cell[a] < static_cast<std::int64_t>(m[a]) || cell[a] >= n - static_cast<std::int64_t>(m[a]))
          lossless = false;
      }
    }
  }
  if (!lossless) {
    meta.compact_support = false;
    for (std::size_t a = 0; a < d; ++a) {
      if (dom.wraps(a)) continue;
      if (compact) {
        // zero extension was exact, only the spill-over is lost
        continue;
      }
      meta.contaminated[a].lo = std::min(dom.shape()[a], meta.contaminated[a].lo + m[a]);
      meta.contaminated[a].hi = std::min(dom.shape()[a], meta.contaminated[a].hi + m[a]);
    }
  }
  return GridFunction(dom, std::move(out), std::move(meta));
}

EpsNetCertificate orbit_eps_net(const GridFunction& f, const Window& k, double p, double epsilon,
                                const std::vector<Point>& translates) {
  check_p(p);
  if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");
  EpsNetCertificate cert;
  cert.epsilon = epsilon;
  std::vector<GridFunction> center_fns;
  cert.assignment.resize(translates.size());
  cert.assigned_distance.resize(translates.size());
  for (std::size_t i = 0; i < translates.size(); ++i) {
    const GridFunction ti = translate(f, translates[i]);
    const std::vector<double> d = parallel_map(
        center_fns.size(), [&](std::size_t c) { return stepanov_distance(ti, center_fns[c], k, p); });
    std::size_t hit = d.size();
    for (std::size_t c = 0; c < d.size(); ++c) {
      if (d[c] < epsilon) {
        hit = c;
        break;
      }
    }
    if (hit == d.size()) {
      cert.centers.push_back(translates[i]);
      cert.center_index.push_back(i);
      center_fns.push_back(ti);
      cert.assignment[i] = cert.centers.size() - 1;
      cert.assigned_distance[i] = 0.0;
    } else {
      cert.assignment[i] = hit;
      cert.assigned_distance[i] = d[hit];
    }
  }
  // distance of every translate to the nearest center of the final net
  const std::vector<double> nearest = parallel_map(translates.size(), [&](std::size_t i) {
    const GridFunction ti = translate(f, translates[i]);
    double best = std::numeric_limits<double>::infinity();
    for (const GridFunction& c : center_fns) best = std::min(best, stepanov_distance(ti, c, k, p));
    return best;
  });
  cert.worst_uncovered_distance = 0.0;
  for (double v : nearest) cert.worst_uncovered_distance = std::max(cert.worst_uncovered_distance, v);
  cert.coverage_verdict = translates.empty() || cert.worst_uncovered_distance < epsilon;
  return cert;
}

bool verify_eps_net(const GridFunction& f, const Window& k, double p, const std::vector<Point>& translates,
                    const EpsNetCertificate& cert) {
  if (cert.assignment.size() != translates.size()) return false;
  if (cert.center_index.size() != cert.centers.size()) return false;
  for (std::size_t c = 0; c < cert.centers.size(); ++c) {
    if (cert.center_index[c] >= translates.size() || translates[cert.center_index[c]] != cert.centers[c])
      return false;
  }
  const std::vector<char> ok = parallel_map(translates.size(), [&](std::size_t i) -> char {
    if (cert.assignment[i] >= cert.centers.size()) return 0;
    const double d =
        stepanov_distance(translate(f, translates[i]), translate(f, cert.centers[cert.assignment[i]]), k, p);
    return d < cert.epsilon ? 1 : 0;
  });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

BohrApproximation bohr_approximate(const GridFunction& f, const Window& k, double p, double epsilon,
                                   const VanHoveSequence& seq, const std::vector<Character>& freq_grid,
                                   const BohrOptions& options) {
  check_p(p);
  const std::size_t n_max = options.n_max == 0 ? seq.n_max() : options.n_max;
  BohrApproximation out;
  out.epsilon = epsilon;
  const GridFunction g = options.eta > 0.0 ? mollify(f, options.eta) : f;
  if (options.eta > 0.0) out.mollifier_distance = stepanov_distance(f, g, k, p);
  const double scale = std::max(1.0, sup_norm(f));
  const std::vector<MeanEstimate> coeffs = parallel_map(
      freq_grid.size(), [&](std::size_t i) { return fb_coefficient(g, freq_grid[i], seq, n_max); });
  for (std::size_t i = 0; i < freq_grid.size(); ++i) {
    out.max_coefficient_gap = std::max(out.max_coefficient_gap, coeffs[i].cauchy_gap);
    if (std::abs(coeffs[i].value) > options.drop_tolerance * scale)
      out.polynomial.add(coeffs[i].value, freq_grid[i]);
  }
  out.distance = stepanov_distance(f, eval_trig_poly(out.polynomial, f.domain()), k, p);
  out.success = out.distance < epsilon;
  return out;
}

}  // namespace apkit
