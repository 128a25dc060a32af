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

// Van Hove averages: means with convergence evidence, Weyl seminorms,
// equi-Weyl almost-period scans, and smoothing by an almost-period kernel.

#ifndef APKIT_WEYL_HPP_
#define APKIT_WEYL_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "apkit/domain.hpp"
#include "apkit/signals.hpp"
#include "apkit/stepanov.hpp"

namespace apkit {

enum class Verdict { kConverged, kNotConverged, kSupportExhausted };
std::string to_string(Verdict v);

inline constexpr double kDefaultMeanTolerance = 1e-3;

struct MeanRow {
  std::size_t n = 0;
  Complex estimate;
};

/// A limit along a van Hove sequence, approximated by its value at the
/// largest usable n.
struct MeanEstimate {
  Complex value;
  std::vector<MeanRow> per_n;  // n = 1 .. n_available, probe y = 0
  /// max |estimate(n') - estimate(n'')| over n', n'' >= ceil(n_available / 2).
  double cauchy_gap = 0.0;
  /// cauchy_gap < tol * max(1, |value|).
  bool converged = false;
  Verdict verdict = Verdict::kNotConverged;
  /// max over probe points y of |estimate_y - estimate_0| at n_available.
  double y_uniformity_gap = 0.0;
  std::size_t n_requested = 0;
  std::size_t n_available = 0;
  double tol = kDefaultMeanTolerance;
};

/// Fills cauchy_gap / converged / verdict from per_n.
void finalize_estimate(MeanEstimate& e);

/// (1/theta(y + W)) int_{y+W} f over one box. Throws SupportError when the
/// box leaves the valid samples of a non-wrapping axis.
Complex window_mean(const GridFunction& f, const Point& y, const Window& w);

/// Means of f over y + A_n for n = 1..n_max at every probe y (y = 0 is
/// always probed). When A_n outgrows the valid samples the table stops and
/// the verdict is kSupportExhausted; SupportError if not even A_1 fits.
MeanEstimate van_hove_mean(const GridFunction& f, const VanHoveSequence& seq,
                           const std::vector<Point>& probe_ys = {}, std::size_t n_max = 0,
                           double tol = kDefaultMeanTolerance);

struct WeylSeminorm {
  MeanEstimate plain;  // y = 0
  MeanEstimate sup;    // max over probe points per n
};

/// ((1/theta(A_n)) int_{y+A_n} |f|^p)^(1/p), plain and sup-over-probes.
WeylSeminorm weyl_seminorm(const GridFunction& f, const VanHoveSequence& seq, double p,
                           std::size_t n_max = 0, double tol = kDefaultMeanTolerance,
                           const std::vector<Point>& probe_ys = {});

struct EquiWeylReport {
  AlmostPeriodReport report;  // periods valid for every n in [uniform_n, n_available]
  std::size_t uniform_n = 0;  // 0 when no t qualifies
  std::vector<Point> candidates;
  /// Per candidate: smallest N with distance < epsilon for all n in
  /// [N, n_available], 0 if there is none.
  std::vector<std::size_t> per_t_n;
  /// Per candidate: ||f - T_t f||_{S^p_{A_n}} at n_available.
  std::vector<double> distance_at_n;
  std::size_t n_available = 0;
  bool support_exhausted = false;
};

/// Scans t over the range with the sequence of norms ||.||_{S^p_{A_n}} and
/// picks the smallest N for which the t with N_t <= N are relatively dense
/// (gap <= gap_bound). Without such N the report lists every t with a finite
/// N_t, uses the largest of those N_t, and is marked not dense.
EquiWeylReport equi_weyl_scan(const GridFunction& f, const VanHoveSequence& seq, double p, double epsilon,
                              const ScanRange& range, double gap_bound, std::size_t n_max = 0);

struct AlmostPeriodKernel {
  GridFunction kernel = GridFunction::zeros(DomainSpec::cyclic(1));  // (1/c) on the almost periods, 0 elsewhere
  double density = 0.0;  // c: fraction of scanned z that are almost periods
  std::size_t members = 0;
  std::size_t candidates = 0;
  std::vector<Point> almost_periods;
};

/// K = (1/c) 1_A with A = {z : ||f - T_{-z} f||_{S^p_{A_{n_prime}}} < eps_prime}
/// over the z of the range (default: the cells of A_{n_max}). Throws
/// ArgumentError when A is empty.
AlmostPeriodKernel almost_period_kernel(const GridFunction& f, const VanHoveSequence& seq, double p,
                                        double eps_prime, std::size_t n_prime,
                                        const std::optional<ScanRange>& range = std::nullopt,
                                        std::size_t n_max = 0);

struct SmoothResult {
  GridFunction phi = GridFunction::zeros(DomainSpec::cyclic(1));
  /// max |phi(x) - phi(x + one cell)| over adjacent valid samples.
  double modulus = 0.0;
  /// (1/theta(A_{n_max})) int_{A_{n_max}} K.
  double kernel_mean = 0.0;
};

/// phi(x) = (1/theta(A_n)) int_{A_n} f(x + z) K(z) dz at n = n_max.
SmoothResult weyl_smooth(const GridFunction& f, const AlmostPeriodKernel& kernel, const VanHoveSequence& seq,
                         std::size_t n_max = 0);

}  // namespace apkit

#endif  // APKIT_WEYL_HPP_
