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

// Fourier-Bohr coefficients c_chi(f) = M(conj(chi) f), spectrum scans over a
// finite frequency grid, Bessel / Parseval checks, and synthesis.

#ifndef APKIT_FOURIER_BOHR_HPP_
#define APKIT_FOURIER_BOHR_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "apkit/domain.hpp"
#include "apkit/signals.hpp"
#include "apkit/weyl.hpp"

namespace apkit {

/// Van Hove mean of conj(chi) f, with the usual convergence evidence.
MeanEstimate fb_coefficient(const GridFunction& f, const Character& chi, const VanHoveSequence& seq,
                            std::size_t n_max = 0, double tol = kDefaultMeanTolerance,
                            const std::vector<Point>& probe_ys = {});

struct SpectralLine {
  Character character;
  Complex coefficient;
  double gap = 0.0;  // cauchy_gap of the coefficient
};

struct SpectrumReport {
  std::vector<SpectralLine> lines;  // |c| >= threshold, by |c| descending
  double mean_square = 0.0;         // M(|f|^2)
  double bessel_sum = 0.0;          // sum of |c|^2 over the whole grid
  double parseval_residual = 0.0;   // mean_square - bessel_sum
  std::vector<Character> freq_grid;
  std::vector<Complex> coefficients;  // one per grid character
  double threshold = 0.0;
  double max_gap = 0.0;
  Verdict verdict = Verdict::kConverged;
};

/// Default line threshold: 1e-3 ||f||_{S^2_{A_1}}.
double default_line_threshold(const GridFunction& f, const VanHoveSequence& seq);

SpectrumReport spectrum_scan(const GridFunction& f, const VanHoveSequence& seq,
                             const std::vector<Character>& freq_grid,
                             std::optional<double> threshold = std::nullopt, std::size_t n_max = 0);

struct ParsevalReport {
  double mean_square = 0.0;
  double bessel_sum = 0.0;
  double residual = 0.0;
};

/// M(|f|^2) - sum |c_chi|^2 over the grid. Needs a symmetric sequence
/// (ArgumentError otherwise).
ParsevalReport parseval_check(const GridFunction& f, const VanHoveSequence& seq,
                              const std::vector<Character>& freq_grid, std::size_t n_max = 0);

struct AutocorrIdentity {
  Character character;
  Complex lhs;  // c_chi(f ⊛ f~)
  double rhs = 0.0;  // |c_chi(f)|^2
  double discrepancy = 0.0;
};

AutocorrIdentity autocorr_identity_check(const GridFunction& f, const Character& chi, const VanHoveSequence& seq,
                                         std::size_t n_max = 0);
/// Same for many characters; f ⊛ f~ is materialized once.
std::vector<AutocorrIdentity> autocorr_identity_check(const GridFunction& f, const std::vector<Character>& chis,
                                                      const VanHoveSequence& seq, std::size_t n_max = 0);

/// Sum over the report's lines of c_chi chi.
TrigPolynomial synthesize(const SpectrumReport& report);

struct UniquenessReport {
  double max_coefficient_discrepancy = 0.0;
  double distance = 0.0;  // ||f - g||_{S^p_K}
  /// Coefficients agree to 1e-6 while the functions differ by more than
  /// 1e-3: the spectrum is off the grid or the sampling is too coarse.
  bool flag = false;
};

UniquenessReport uniqueness_distance(const GridFunction& f, const GridFunction& g, const VanHoveSequence& seq,
                                     const std::vector<Character>& freq_grid, const Window& k, double p,
                                     std::size_t n_max = 0);

}  // namespace apkit

#endif  // APKIT_FOURIER_BOHR_HPP_
