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

#include "apkit/fourier_bohr.hpp"

#include <algorithm>
#include <cmath>

#include "apkit/convolution.hpp"
#include "apkit/error.hpp"
#include "apkit/parallel.hpp"
#include "apkit/stepanov.hpp"

namespace apkit {

MeanEstimate fb_coefficient(const GridFunction& f, const Character& chi, const VanHoveSequence& seq,
                            std::size_t n_max, double tol, const std::vector<Point>& probe_ys) {
  if (chi.frequency.size() != f.domain().rank()) throw DomainError("character rank does not match domain rank");
  return van_hove_mean(eval_character(chi.conjugate(), f.domain()) * f, seq, probe_ys, n_max, tol);
}

double default_line_threshold(const GridFunction& f, const VanHoveSequence& seq) {
  return 1e-3 * stepanov_norm(f, seq.window(1), 2.0).value;
}

SpectrumReport spectrum_scan(const GridFunction& f, const VanHoveSequence& seq,
                             const std::vector<Character>& freq_grid, std::optional<double> threshold,
                             std::size_t n_max) {
  SpectrumReport rep;
  rep.freq_grid = freq_grid;
  rep.threshold = threshold ? *threshold : default_line_threshold(f, seq);
  const std::vector<MeanEstimate> est = parallel_map(
      freq_grid.size(), [&](std::size_t i) { return fb_coefficient(f, freq_grid[i], seq, n_max); });
  std::vector<double> squares(freq_grid.size());
  auto worse = [](Verdict a, Verdict b) {
    auto r = [](Verdict v) { return v == Verdict::kConverged ? 0 : v == Verdict::kNotConverged ? 1 : 2; };
    return r(b) > r(a) ? b : a;
  };
  for (std::size_t i = 0; i < freq_grid.size(); ++i) {
    rep.coefficients.push_back(est[i].value);
    squares[i] = std::norm(est[i].value);
    rep.max_gap = std::max(rep.max_gap, est[i].cauchy_gap);
    rep.verdict = worse(rep.verdict, est[i].verdict);
    if (std::abs(est[i].value) >= rep.threshold)
      rep.lines.push_back({freq_grid[i], est[i].value, est[i].cauchy_gap});
  }
  std::stable_sort(rep.lines.begin(), rep.lines.end(), [](const SpectralLine& a, const SpectralLine& b) {
    return std::abs(a.coefficient) > std::abs(b.coefficient);
  });
  rep.bessel_sum = pairwise_sum(squares);
  const MeanEstimate ms = van_hove_mean(map(f, [](Complex v) { return Complex(std::norm(v), 0.0); }), seq, {}, n_max);
  rep.verdict = worse(rep.verdict, ms.verdict);
  rep.mean_square = ms.value.real();
  rep.parseval_residual = rep.mean_square - rep.bessel_sum;
  return rep;
}

ParsevalReport parseval_check(const GridFunction& f, const VanHoveSequence& seq,
                              const std::vector<Character>& freq_grid, std::size_t n_max) {
  if (!seq.symmetric()) throw ArgumentError("Parseval check needs a symmetric van Hove sequence (-A_n = A_n)");
  const SpectrumReport rep = spectrum_scan(f, seq, freq_grid, 0.0, n_max);
  return {rep.mean_square, rep.bessel_sum, rep.parseval_residual};
}

std::vector<AutocorrIdentity> autocorr_identity_check(const GridFunction& f, const std::vector<Character>& chis,
                                                      const VanHoveSequence& seq, std::size_t n_max) {
  const GridFunction auto_f = eberlein_materialize(f, involution(f), seq, n_max);
  return parallel_map(chis.size(), [&](std::size_t i) {
    AutocorrIdentity r;
    r.character = chis[i];
    r.lhs = fb_coefficient(auto_f, chis[i], seq, n_max).value;
    r.rhs = std::norm(fb_coefficient(f, chis[i], seq, n_max).value);
    r.discrepancy = std::abs(r.lhs - r.rhs);
    return r;
  });
}

AutocorrIdentity autocorr_identity_check(const GridFunction& f, const Character& chi, const VanHoveSequence& seq,
                                         std::size_t n_max) {
  return autocorr_identity_check(f, std::vector<Character>{chi}, seq, n_max).front();
}

TrigPolynomial synthesize(const SpectrumReport& report) {
  TrigPolynomial p;
  for (const SpectralLine& line : report.lines) p.add(line.coefficient, line.character);
  return p;
}

UniquenessReport uniqueness_distance(const GridFunction& f, const GridFunction& g, const VanHoveSequence& seq,
                                     const std::vector<Character>& freq_grid, const Window& k, double p,
                                     std::size_t n_max) {
  require_same_domain(f, g);
  const std::vector<double> diff = parallel_map(freq_grid.size(), [&](std::size_t i) {
    return std::abs(fb_coefficient(f, freq_grid[i], seq, n_max).value -
                    fb_coefficient(g, freq_grid[i], seq, n_max).value);
  });
  UniquenessReport r;
  for (double v : diff) r.max_coefficient_discrepancy = std::max(r.max_coefficient_discrepancy, v);
  r.distance = stepanov_distance(f, g, k, p);
  r.flag = r.max_coefficient_discrepancy < 1e-6 && r.distance > 1e-3;
  return r;
}

}  // namespace apkit
