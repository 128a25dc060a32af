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

#ifndef APKIT_SIGNALS_HPP_
#define APKIT_SIGNALS_HPP_

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "apkit/domain.hpp"

namespace apkit {

using Complex = std::complex<double>;

/// Cells at the low / high end of an axis whose values are not trustworthy
/// (they were read from outside a non-wrapping domain).
struct Margin {
  std::size_t lo = 0;
  std::size_t hi = 0;
  friend bool operator==(const Margin&, const Margin&) = default;
};

struct SampleMetadata {
  std::vector<Margin> contaminated;  // one entry per axis
  /// Samples are the whole function: it vanishes outside the represented
  /// box, so zero extension is exact and never contaminates.
  bool compact_support = false;
  std::string provenance;
  double snap_distance = 0.0;  // largest translation snap applied so far
};

/// Complex samples of a function on a DomainSpec, one per cell, row-major
/// with axis 0 slowest.
class GridFunction {
 public:
  GridFunction(DomainSpec domain, std::vector<Complex> samples, SampleMetadata meta = {});

  static GridFunction zeros(const DomainSpec& domain);
  static GridFunction constant(const DomainSpec& domain, Complex c);
  /// Samples f at every cell coordinate.
  static GridFunction sample(const DomainSpec& domain, const std::function<Complex(const Point&)>& f,
                             std::string provenance = {});
  /// Real 1D convenience.
  static GridFunction sample_1d(const DomainSpec& domain, const std::function<double(double)>& f,
                                std::string provenance = {});

  const DomainSpec& domain() const { return domain_; }
  std::span<const Complex> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const Complex& operator[](std::size_t i) const { return samples_[i]; }
  const SampleMetadata& metadata() const { return meta_; }
  const Margin& margin(std::size_t axis) const { return meta_.contaminated[axis]; }
  bool clean() const;

  GridFunction with_metadata(SampleMetadata meta) const;
  GridFunction with_provenance(std::string provenance) const;
  GridFunction as_compact(bool compact = true) const;

  /// Valid cell range [lo, hi) of an axis (the whole axis when it wraps).
  std::pair<std::int64_t, std::int64_t> valid_range(std::size_t axis) const;

 private:
  DomainSpec domain_;
  std::vector<Complex> samples_;
  SampleMetadata meta_;
};

/// A character of the sampled group. Per axis: real and torus axes use
/// chi(x) = exp(2 pi i k x); cyclic Z_N uses an integer k mod N with
/// exp(2 pi i k x / N); Z uses k in [0, 1) with exp(2 pi i k x).
struct Character {
  std::vector<double> frequency;

  static Character trivial(std::size_t rank) { return Character{std::vector<double>(rank, 0.0)}; }
  /// Canonical representative (cyclic: integer mod N, integer lattice: mod 1).
  Character canonical(const DomainSpec& domain) const;
  Character conjugate() const;
  Character operator*(const Character& other) const;
  /// chi at the sample of a given cell.
  Complex at(const DomainSpec& domain, std::span<const std::int64_t> cell) const;
  /// chi at an arbitrary group element.
  Complex at(const DomainSpec& domain, std::span<const double> x) const;

  friend bool operator==(const Character&, const Character&) = default;
  friend auto operator<=>(const Character&, const Character&) = default;
};

/// Every character of a finite cyclic (product) domain.
std::vector<Character> full_dual_grid(const DomainSpec& domain);
/// Lattice multiples m / extent, |m| <= max_index, of a 1D continuous axis.
std::vector<Character> lattice_dual_grid(const DomainSpec& domain, std::int64_t max_index);

struct TrigTerm {
  Complex coefficient;
  Character character;
};

/// Finite sum of coefficient * character. Terms with equal characters are
/// merged on insertion.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  explicit TrigPolynomial(std::vector<TrigTerm> terms);

  void add(Complex coefficient, const Character& chi);
  const std::vector<TrigTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Sum of |c_j|, an upper bound for the sup norm.
  double coefficient_l1() const;
  /// Coefficient of chi (0 if absent).
  Complex coefficient(const Character& chi) const;
  TrigPolynomial canonical(const DomainSpec& domain) const;

  TrigPolynomial operator+(const TrigPolynomial& other) const;
  TrigPolynomial operator*(const TrigPolynomial& other) const;
  TrigPolynomial operator*(Complex c) const;

 private:
  std::vector<TrigTerm> terms_;
};

/// Pointwise synthesis of P on every sample of the domain.
GridFunction eval_trig_poly(const TrigPolynomial& p, const DomainSpec& domain);
GridFunction eval_character(const Character& chi, const DomainSpec& domain, Complex c = 1.0);

struct Atom {
  Point position;
  Complex weight;
};

class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  explicit AtomicMeasure(std::vector<Atom> atoms);
  const std::vector<Atom>& atoms() const { return atoms_; }
  double total_variation() const { return total_variation_; }

 private:
  std::vector<Atom> atoms_;
  double total_variation_ = 0.0;
};

enum class PointwiseOp { kAdd, kSub, kScale, kMul, kAbs, kConj, kReflect, kInvolution };

GridFunction operator+(const GridFunction& f, const GridFunction& g);
GridFunction operator-(const GridFunction& f, const GridFunction& g);
GridFunction operator*(const GridFunction& f, const GridFunction& g);
GridFunction operator*(Complex c, const GridFunction& f);
GridFunction abs(const GridFunction& f);
GridFunction conj(const GridFunction& f);
/// f^dagger(x) = f(-x). Needs a grid that is mapped onto itself by x -> -x.
GridFunction reflect(const GridFunction& f);
/// f~(x) = conj(f(-x)).
GridFunction involution(const GridFunction& f);
/// Samplewise map; the metadata is kept.
GridFunction map(const GridFunction& f, const std::function<Complex(Complex)>& op);

/// Dispatcher over PointwiseOp; `g` is needed for the binary ops and `c` for
/// kScale.
GridFunction pointwise(PointwiseOp op, const GridFunction& f, const GridFunction* g = nullptr,
                       Complex c = 1.0);

/// (T_t f)(x) = f(x - t). t is snapped to whole cells (snap recorded in the
/// metadata). Wrapping axes shift cyclically; other axes zero-extend and
/// flag the vacated cells as contaminated.
GridFunction translate(const GridFunction& f, std::span<const double> t);
GridFunction translate_cells(const GridFunction& f, std::span<const std::int64_t> shift);

/// Largest |f| over uncontaminated samples.
double sup_norm(const GridFunction& f);

/// Metadata of a binary combination (margins: per-side maximum).
SampleMetadata combine_metadata(const GridFunction& f, const GridFunction& g, bool compact);
void require_same_domain(const GridFunction& f, const GridFunction& g);

}  // namespace apkit

#endif  // APKIT_SIGNALS_HPP_
