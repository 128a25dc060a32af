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

#include "apkit/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apkit/error.hpp"
#include "apkit/parallel.hpp"

namespace apkit {
namespace {

void require_continuous_1d(const DomainSpec& domain, const char* what) {
  if (domain.rank() != 1 || domain.axis(0).discrete())
    throw DomainError(std::string(what) + " needs a one-dimensional real or torus grid");
}

}  // namespace

GridFunction periodized_inverse_sqrt(const DomainSpec& domain) {
  require_continuous_1d(domain, "periodized_inverse_sqrt");
  return GridFunction::sample_1d(
      domain,
      [](double x) {
        const double u = x - std::floor(x + 0.5);
        if (u == 0.0) throw DomainError("sample lands on the singularity of |x|^(-1/2)");
        return 1.0 / std::sqrt(std::abs(u));
      },
      "periodized-inverse-sqrt");
}

GridFunction levitan_example(const DomainSpec& domain, double alpha, double beta) {
  if (domain.rank() != 1) throw DomainError("levitan_example needs a one-dimensional domain");
  return GridFunction::sample_1d(
      domain, [alpha, beta](double x) { return std::sin(1.0 / (2.0 + std::cos(alpha * x) + std::cos(beta * x))); },
      "levitan");
}

GridFunction half_step(const DomainSpec& domain) {
  if (domain.rank() != 1) throw DomainError("half_step needs a one-dimensional domain");
  return GridFunction::sample_1d(domain, [](double x) { return std::clamp(x, 0.0, 1.0); }, "half-step");
}

std::vector<std::string> gallery_names() { return {"half-step", "levitan", "periodized-inverse-sqrt"}; }

GridFunction gallery_function(const std::string& name, const DomainSpec& domain) {
  if (name == "half-step") return half_step(domain);
  if (name == "levitan") return levitan_example(domain);
  if (name == "periodized-inverse-sqrt") return periodized_inverse_sqrt(domain);
  throw ArgumentError("unknown gallery function: " + name);
}

std::string to_string(ClassVerdict v) {
  switch (v) {
    case ClassVerdict::kPass: return "pass";
    case ClassVerdict::kFail: return "fail";
    case ClassVerdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

double one_cell_modulus(const GridFunction& f) {
  const DomainSpec& dom = f.domain();
  double m = 0.0;
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    const CellIndex x = dom.unflatten(flat);
    bool valid = true;
    for (std::size_t a = 0; a < dom.rank(); ++a) {
      const auto [lo, hi] = f.valid_range(a);
      if (x[a] < lo || x[a] >= hi) valid = false;
    }
    if (!valid) continue;
    for (std::size_t a = 0; a < dom.rank(); ++a) {
      if (dom.axis(a).discrete()) continue;
      CellIndex y = x;
      ++y[a];
      if (!dom.wraps(a) && y[a] >= f.valid_range(a).second) continue;
      m = std::max(m, std::abs(f[dom.flat_index(y)] - f[flat]));
    }
  }
  return m;
}

// Largest n <= n_max whose A_n, placed at 0, stays inside the samples that
// are valid for f - T_t f at every scanned t.
std::size_t effective_n(const GridFunction& f, const VanHoveSequence& seq, const std::vector<CellIndex>& cand,
                        std::size_t n_max) {
  const DomainSpec& dom = f.domain();
  const std::size_t d = dom.rank();
  std::vector<std::int64_t> lo(d), hi(d);
  for (std::size_t a = 0; a < d; ++a) {
    const auto [vlo, vhi] = f.valid_range(a);
    std::int64_t tmin = 0, tmax = 0;
    for (const CellIndex& t : cand) {
      tmin = std::min(tmin, t[a]);
      tmax = std::max(tmax, t[a]);
    }
    lo[a] = vlo + tmax;
    hi[a] = vhi + tmin;
  }
  std::size_t best = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const CellBox box = to_cells(dom, seq.window(n));
    bool ok = true;
    for (std::size_t a = 0; a < d; ++a) {
      if (dom.wraps(a)) continue;
      if (box.start[a] < lo[a] || box.start[a] + static_cast<std::int64_t>(box.count[a]) > hi[a]) ok = false;
    }
    if (!ok) break;
    best = n;
  }
  return best;
}

ClassVerdict all_dense(const std::vector<ClassEvidence>& ev) {
  for (const ClassEvidence& e : ev)
    if (!e.relatively_dense) return ClassVerdict::kFail;
  return ClassVerdict::kPass;
}

}  // namespace

ClassifyReport classify(const GridFunction& f, const ClassifyConfig& config) {
  const DomainSpec& dom = f.domain();
  const std::size_t d = dom.rank();
  if (config.epsilons.empty()) throw ArgumentError("classify needs at least one epsilon");
  const VanHoveSequence seq = config.seq ? *config.seq : VanHoveSequence::centered_cubes(d);
  const Window k = config.k ? *config.k : seq.window(1);
  const double eps_min = *std::min_element(config.epsilons.begin(), config.epsilons.end());

  ClassifyReport rep;
  rep.uc_threshold = config.uc_threshold ? *config.uc_threshold : eps_min / 4.0;
  const std::vector<CellIndex> cand = scan_translations(dom, config.scan_range);
  if (cand.empty()) throw ArgumentError("classify needs a nonempty scan range");
  rep.n_effective = effective_n(f, seq, cand, config.n_max);
  if (rep.n_effective == 0) throw SupportError("A_1 does not fit the samples left valid by the scan range");

  // SAP: uniform continuity on the grid plus dense sup-norm epsilon-periods
  ClassResult sap{"SAP", ClassVerdict::kFail, {}, {}};
  rep.one_cell_modulus = dom.discrete() ? 0.0 : one_cell_modulus(f);
  const std::vector<double> sup_dist =
      parallel_map(cand.size(), [&](std::size_t i) { return sup_norm(f - translate_cells(f, cand[i])); });
  for (double eps : config.epsilons) {
    std::vector<AlmostPeriod> ps;
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (sup_dist[i] < eps) ps.push_back({translation_point(dom, cand[i]), sup_dist[i]});
    const double gap = period_max_gap(dom, config.scan_range, ps);
    sap.evidence.push_back({eps, ps.size(), gap, gap <= config.gap_bound, 0});
  }
  sap.verdict = all_dense(sap.evidence);
  if (rep.one_cell_modulus >= rep.uc_threshold) {
    sap.verdict = ClassVerdict::kFail;
    sap.note = "one-cell modulus above the uniform-continuity threshold";
  }

  ClassResult s1{"S1", ClassVerdict::kFail, {}, {}};
  for (double eps : config.epsilons) {
    const AlmostPeriodReport r = almost_period_scan(f, k, 1.0, eps, config.scan_range, config.gap_bound);
    s1.evidence.push_back({eps, r.periods.size(), r.max_gap, r.relatively_dense, 0});
  }
  s1.verdict = all_dense(s1.evidence);

  ClassResult w1{"W1", ClassVerdict::kFail, {}, {}};
  bool exhausted = false;
  for (double eps : config.epsilons) {
    const EquiWeylReport r = equi_weyl_scan(f, seq, 1.0, eps, config.scan_range, config.gap_bound, rep.n_effective);
    exhausted = exhausted || r.n_available == 0;
    w1.evidence.push_back({eps, r.report.periods.size(), r.report.max_gap, r.report.relatively_dense, r.uniform_n});
  }
  w1.verdict = exhausted ? ClassVerdict::kInconclusive : all_dense(w1.evidence);

  ClassResult map_result{"MAP", ClassVerdict::kInconclusive, {}, {}};
  const MeanEstimate m = van_hove_mean(abs(f), seq, {}, rep.n_effective);
  rep.upper_mean = m.value.real();
  rep.upper_mean_gap = m.cauchy_gap;
  map_result.verdict = std::isfinite(rep.upper_mean) ? ClassVerdict::kPass : ClassVerdict::kFail;
  map_result.note = "mean of |f| over A_n at n = " + std::to_string(rep.n_effective);

  rep.classes = {sap, s1, w1, map_result};
  for (std::size_t i = 0; i + 1 < rep.classes.size(); ++i) {
    if (rep.classes[i].verdict == ClassVerdict::kPass && rep.classes[i + 1].verdict != ClassVerdict::kPass)
      rep.chain_consistent = false;
  }
  if (!rep.chain_consistent)
    throw Error("classifier verdicts break the inclusion chain SAP => S1 => W1 => MAP");
  return rep;
}

}  // namespace apkit
