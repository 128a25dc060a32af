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

// Convolution of sampled functions, with finite atomic measures, and the
// van Hove averaged (Eberlein) convolution.

#ifndef APKIT_CONVOLUTION_HPP_
#define APKIT_CONVOLUTION_HPP_

#include <cstddef>
#include <vector>

#include "apkit/domain.hpp"
#include "apkit/signals.hpp"
#include "apkit/weyl.hpp"

namespace apkit {

/// (f * g)(x) = int f(x - y) g(y) dy by direct quadrature. Wrapping axes
/// (which must agree between f and g) convolve circularly; other axes give
/// an output grid of n_f + n_g - 1 cells whose samples are the pairwise sums
/// of the input samples. Needs at least one compactly supported factor on a
/// non-wrapping domain (DomainError otherwise).
GridFunction convolve(const GridFunction& f, const GridFunction& g);

/// (f * mu)(x) = sum_i w_i f(x - y_i), atom positions snapped to cells.
GridFunction convolve_measure(const GridFunction& f, const AtomicMeasure& mu);

struct EberleinEstimate {
  std::vector<Point> points;
  std::vector<MeanEstimate> estimates;  // one per point
  /// Worst verdict over the points.
  Verdict verdict = Verdict::kConverged;
  double max_cauchy_gap = 0.0;
  double snap_distance = 0.0;
};

/// (f ⊛ g)(x) = lim (1/theta(A_n)) int_{A_n} f(x - y) g(y) dy at each point,
/// with a per-n table. f(x - y) is read at the nearest sample.
EberleinEstimate eberlein(const GridFunction& f, const GridFunction& g, const VanHoveSequence& seq,
                          const std::vector<Point>& points, std::size_t n_max = 0,
                          double tol = kDefaultMeanTolerance);

/// f ⊛ g at n_max on every sample of f's domain. Points where A_{n_max}
/// does not fit are flagged as contaminated (non-wrapping axes only).
GridFunction eberlein_materialize(const GridFunction& f, const GridFunction& g, const VanHoveSequence& seq,
                                  std::size_t n_max = 0);

}  // namespace apkit

#endif  // APKIT_CONVOLUTION_HPP_
