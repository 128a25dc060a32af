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

// Sampled locally compact Abelian groups: grids on R^d, finite windows of
// Z^d, cyclic groups Z_N, tori, and products of these. Every axis carries a
// cell spacing h, and one cell has Haar weight prod(h).

#ifndef APKIT_DOMAIN_HPP_
#define APKIT_DOMAIN_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace apkit {

using Point = std::vector<double>;
using CellIndex = std::vector<std::int64_t>;

enum class AxisKind { kReal, kInteger, kCyclic, kTorus };
enum class DomainKind { kRealGrid, kIntegerLattice, kCyclic, kTorusGrid, kProduct };
enum class BoundaryMode { kWrap, kZeroExtend };

/// One axis of a sampled domain.
///
/// Continuous axes (real, torus) are sampled at cell centres
/// origin + (i + 1/2) h; discrete axes (integer, cyclic) at origin + i with
/// h = 1. Cell i covers [origin + i h, origin + (i + 1) h).
struct Axis {
  AxisKind kind = AxisKind::kReal;
  double h = 1.0;
  std::size_t n = 1;
  double origin = 0.0;

  bool discrete() const { return kind == AxisKind::kInteger || kind == AxisKind::kCyclic; }
  bool compact() const { return kind == AxisKind::kCyclic || kind == AxisKind::kTorus; }
  double extent() const { return static_cast<double>(n) * h; }
  /// Sample coordinate of cell i (i may lie outside [0, n)).
  double coordinate(std::int64_t i) const;
  /// Left edge of cell i.
  double edge(std::int64_t i) const { return origin + static_cast<double>(i) * h; }

  friend bool operator==(const Axis&, const Axis&) = default;
};

class DomainSpec {
 public:
  DomainSpec(DomainKind kind, std::vector<Axis> axes, BoundaryMode mode);

  static DomainSpec real_grid(double h, std::size_t n, double origin,
                              BoundaryMode mode = BoundaryMode::kZeroExtend);
  /// Real grid of n cells of width h laid symmetrically around 0.
  static DomainSpec symmetric_real_grid(double h, std::size_t n,
                                        BoundaryMode mode = BoundaryMode::kZeroExtend);
  static DomainSpec integer_lattice(std::size_t n, std::int64_t origin,
                                    BoundaryMode mode = BoundaryMode::kZeroExtend);
  static DomainSpec cyclic(std::size_t n);
  static DomainSpec torus_grid(double h, std::size_t n, double origin = 0.0);
  static DomainSpec product(const std::vector<DomainSpec>& factors);

  DomainKind kind() const { return kind_; }
  BoundaryMode boundary_mode() const { return mode_; }
  const std::vector<Axis>& axes() const { return axes_; }
  const Axis& axis(std::size_t a) const { return axes_[a]; }
  std::size_t rank() const { return axes_.size(); }
  std::size_t size() const { return size_; }
  const std::vector<std::size_t>& shape() const { return shape_; }
  const std::vector<std::size_t>& strides() const { return strides_; }
  /// Haar weight of a single cell.
  double cell_volume() const { return cell_volume_; }
  bool wraps(std::size_t a) const;
  bool discrete() const;

  std::size_t flat_index(std::span<const std::int64_t> cell) const;
  CellIndex unflatten(std::size_t flat) const;
  Point point(std::size_t flat) const;

  /// Nearest cell-multiple translation for a point t (in domain units), and
  /// the Euclidean distance that snapping moved it.
  CellIndex snap_translation(std::span<const double> t, double* snap_distance = nullptr) const;
  /// Cell whose left edge is nearest to x, per axis.
  CellIndex snap_edge(std::span<const double> x, double* snap_distance = nullptr) const;

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

 private:
  DomainKind kind_;
  BoundaryMode mode_;
  std::vector<Axis> axes_;
  std::vector<std::size_t> shape_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
  double cell_volume_ = 1.0;
};

std::string to_string(DomainKind kind);
std::string to_string(AxisKind kind);
std::string to_string(BoundaryMode mode);

/// A box K = offset + prod [0, side_i) in G.
struct Window {
  Point offset;
  std::vector<double> side;

  static Window box(Point lo, const Point& hi);
  static Window unit(std::size_t rank);
  std::size_t rank() const { return side.size(); }
  Point lo() const { return offset; }
  Point hi() const;
  Window translated(std::span<const double> t) const;

  friend bool operator==(const Window&, const Window&) = default;
};

/// theta_G(K) for a box window; product of the side lengths.
double haar_measure(const Window& k);

/// Cell-aligned placement of a window on a domain: first cell per axis
/// (may be negative or exceed n on wrapping axes) and cell count per axis.
struct CellBox {
  CellIndex start;
  std::vector<std::size_t> count;
  std::size_t cells() const;
};

/// Converts a window to cells. Side lengths must be whole cell multiples
/// within 1e-6 of a cell; the offset is snapped to the nearest cell edge.
CellBox to_cells(const DomainSpec& domain, const Window& k);
/// Cell counts of the window's sides only.
std::vector<std::size_t> cell_counts(const DomainSpec& domain, const Window& k);

/// Nested family of boxes A_n with affine edges
///   lo_a(n) = lo_const_a + lo_slope_a n,  hi_a(n) = hi_const_a + hi_slope_a n,
/// or the whole group on a compact domain.
class VanHoveSequence {
 public:
  struct AxisRule {
    double lo_const = 0.0;
    double lo_slope = 0.0;
    double hi_const = 0.0;
    double hi_slope = 0.0;
    friend bool operator==(const AxisRule&, const AxisRule&) = default;
  };

  VanHoveSequence(std::vector<AxisRule> rules, std::string name, std::size_t n_max = 100);

  /// Centred cubes of side side_unit * n (the default rule).
  static VanHoveSequence centered_cubes(std::size_t rank, double side_unit = 1.0,
                                        std::size_t n_max = 100);
  /// A_n = [-n s, n s)^d.
  static VanHoveSequence centered_intervals(std::size_t rank, double scale = 1.0,
                                            std::size_t n_max = 100);
  /// A_n = [0, n s).
  static VanHoveSequence right_rays(double scale = 1.0, std::size_t n_max = 100);
  /// A_n = [-n s, 0).
  static VanHoveSequence left_rays(double scale = 1.0, std::size_t n_max = 100);
  /// A_n = [0, n) x [0, 1): a non-van-Hove family.
  static VanHoveSequence slab(std::size_t n_max = 100);
  /// A_n = the whole compact domain for every n.
  static VanHoveSequence full_group(const DomainSpec& domain, std::size_t n_max = 1);

  Window window(std::size_t n) const;
  std::size_t rank() const { return rules_.size(); }
  bool symmetric() const;
  /// A_n subset of A_{n+1} for all n (edges move monotonically outward).
  bool nested() const;
  const std::string& name() const { return name_; }
  const std::vector<AxisRule>& rules() const { return rules_; }
  std::size_t n_max() const { return n_max_; }
  VanHoveSequence with_n_max(std::size_t n_max) const;
  /// Windows A_1..A_{n_max}.
  std::vector<Window> materialize() const;

  friend bool operator==(const VanHoveSequence&, const VanHoveSequence&) = default;

 private:
  std::vector<AxisRule> rules_;
  std::string name_;
  std::size_t n_max_;
};

/// theta(d^K A) for boxes, by exact interval arithmetic on the dilation
/// closure(A+K) minus A and the erosion complement ((G \ A) - K) cap closure(A).
/// With a domain, axes on which A covers a whole compact period contribute no
/// boundary.
double k_boundary_measure(const Window& a, const Window& k, const DomainSpec* domain = nullptr);

struct VanHoveRow {
  std::size_t n;
  double boundary;
  double measure;
  double ratio;
};

struct VanHoveReport {
  std::string sequence;
  Window k;
  double tolerance;
  std::vector<VanHoveRow> rows;
  bool nonincreasing;
  bool verdict;  // ratio at n_max < tolerance
};

VanHoveReport van_hove_report(const VanHoveSequence& seq, const Window& k, std::size_t n_max,
                              double tolerance = 0.05, const DomainSpec* domain = nullptr);

}  // namespace apkit

#endif  // APKIT_DOMAIN_HPP_
