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

// Stepanov machinery: windowed L^p means, the sup-over-translates norm,
// almost-period scans, truncation, box mollification, epsilon-nets of
// translation orbits, and approximation by trigonometric polynomials.

#ifndef APKIT_STEPANOV_HPP_
#define APKIT_STEPANOV_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <optional>
#include <string>
#include <vector>

#include "apkit/domain.hpp"
#include "apkit/signals.hpp"

namespace apkit {

/// |z|^p, with exact shortcuts for p = 1, 2 and 0^p = 0.
double abs_pow(Complex z, double p);

/// ((1/theta(K)) int_{y+K} |f|^p)^(1/p) by the midpoint rule. y is snapped
/// so that y + K starts on a cell edge.
double window_lp_mean(const GridFunction& f, const Point& y, const Window& k, double p);

struct StepanovNorm {
  double value = 0.0;
  Point argmax;  // y of the maximising window y + K (smallest in lexicographic order on ties)
  std::size_t windows = 0;
  /// Spacing of the scanned y grid; the sup over G is underestimated by at
  /// most this times the Lipschitz constant of the window mean.
  double resolution = 0.0;
};

/// sup over every admissible cell-aligned y of window_lp_mean. On
/// non-wrapping axes only windows inside the uncontaminated range count.
StepanovNorm stepanov_norm(const GridFunction& f, const Window& k, double p);

/// ||f - g||_{S^p_K}.
double stepanov_distance(const GridFunction& f, const GridFunction& g, const Window& k, double p);

/// ||f - T_t f||_{S^p_K} for a whole-cell translation.
double translation_distance(const GridFunction& f, std::span<const std::int64_t> shift, const Window& k,
                            double p);

struct EquivalenceBounds {
  double c1 = 1.0;
  double c2 = 1.0;
  std::size_t n_cover = 1;  // translates of K2 needed to cover K1
  std::size_t n_cover_reverse = 1;  // translates of K1 needed to cover K2
};

/// Constants with c1 ||f||_{S^p_{K2}} <= ||f||_{S^p_{K1}} <= c2 ||f||_{S^p_{K2}}
/// from axis-wise box coverings.
EquivalenceBounds equivalence_bounds(const Window& k1, const Window& k2, double p);

/// Inclusive box of translations, scanned every `stride` cells per axis.
struct ScanRange {
  Point lo;
  Point hi;
  std::vector<std::size_t> stride;  // empty = one cell on every axis

  static ScanRange interval(double lo, double hi, std::size_t stride = 1) {
    return ScanRange{{lo}, {hi}, {stride}};
  }
};

/// Cell translations covered by a scan range, in lexicographic order.
std::vector<CellIndex> scan_translations(const DomainSpec& domain, const ScanRange& range);
/// Translation in domain units of a cell shift.
Point translation_point(const DomainSpec& domain, std::span<const std::int64_t> shift);

enum class NormKind { kStepanov, kEquiWeyl, kSup, kUpperMean };
std::string to_string(NormKind kind);

struct AlmostPeriod {
  Point t;
  double distance = 0.0;
};

struct AlmostPeriodReport {
  double epsilon = 0.0;
  NormKind norm_kind = NormKind::kStepanov;
  double p = 1.0;
  Window k;
  std::vector<AlmostPeriod> periods;  // sorted by t
  /// 1D: largest gap between consecutive points of {lo} + periods + {hi}.
  /// Higher rank: twice the largest Chebyshev distance from a scanned
  /// translate to its nearest period. Infinite when no period was found.
  double max_gap = 0.0;
  ScanRange scan_range;
  double gap_bound = 0.0;
  bool relatively_dense = false;
  std::size_t candidates = 0;
};

/// Computes max_gap for a set of periods of a scan.
double period_max_gap(const DomainSpec& domain, const ScanRange& range,
                      const std::vector<AlmostPeriod>& periods);

/// Exhaustive scan of t over the range; reports every t with
/// ||f - T_t f||_{S^p_K} < epsilon.
AlmostPeriodReport almost_period_scan(const GridFunction& f, const Window& k, double p, double epsilon,
                                      const ScanRange& range, double gap_bound);

/// f_L: f where |f| <= L, L f / |f| elsewhere.
GridFunction truncate(const GridFunction& f, double level);

/// f_eta(x): mean of f over the box of half-width eta around x. The half
/// width is rounded to m whole cells (m >= 1), so the box spans 2m + 1 cells.
GridFunction mollify(const GridFunction& f, double eta);
/// Cells per axis of the mollifier half-width for a given eta.
std::vector<std::size_t> mollifier_half_width(const DomainSpec& domain, double eta);

struct EpsNetCertificate {
  double epsilon = 0.0;
  std::vector<Point> centers;
  std::vector<std::size_t> center_index;  // position of each center in the translate list
  std::vector<std::size_t> assignment;    // per translate: index into centers
  std::vector<double> assigned_distance;  // per translate: distance to its center
  bool coverage_verdict = false;
  /// Largest distance from a translate to its nearest center.
  double worst_uncovered_distance = 0.0;
};

/// Greedy epsilon-net of {T_t f : t in translates} in ||.||_{S^p_K}.
EpsNetCertificate orbit_eps_net(const GridFunction& f, const Window& k, double p, double epsilon,
                                const std::vector<Point>& translates);

/// Recomputes every translate-to-center distance of a certificate and checks
/// that each translate lies within epsilon of some center.
bool verify_eps_net(const GridFunction& f, const Window& k, double p, const std::vector<Point>& translates,
                    const EpsNetCertificate& cert);

struct BohrOptions {
  double eta = 0.0;  // mollifier half-width; 0 skips mollification
  std::size_t n_max = 0;  // 0 = seq.n_max()
  /// Coefficients with |c| <= drop_tolerance * max(1, sup|f|) are discarded.
  double drop_tolerance = 1e-12;
};

struct BohrApproximation {
  TrigPolynomial polynomial;
  double distance = 0.0;  // ||f - P||_{S^p_K}
  bool success = false;   // distance < epsilon
  double epsilon = 0.0;
  double mollifier_distance = 0.0;  // ||f - f_eta||_{S^p_K} (0 without mollification)
  double max_coefficient_gap = 0.0;
};

/// Mollify (optional), project onto the Fourier-Bohr coefficients of the
/// frequency grid along `seq`, then measure ||f - P||_{S^p_K}. Returns the
/// best polynomial found even when epsilon is not reached.
BohrApproximation bohr_approximate(const GridFunction& f, const Window& k, double p, double epsilon,
                                   const VanHoveSequence& seq, const std::vector<Character>& freq_grid,
                                   const BohrOptions& options = {});

}  // namespace apkit

#endif  // APKIT_STEPANOV_HPP_
