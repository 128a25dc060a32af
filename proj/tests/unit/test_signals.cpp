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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "apkit/error.hpp"
#include "apkit/signals.hpp"
#include "oracles.hpp"

namespace apkit {
namespace {

using testing::Rng;

GridFunction random_cyclic(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return GridFunction(DomainSpec::cyclic(n), rng.complex_vector(n));
}

TEST(Signals, ConstructorRejectsWrongSampleCount) {
  EXPECT_THROW(GridFunction(DomainSpec::cyclic(4), std::vector<Complex>(3)), ArgumentError);
}

TEST(Signals, SampleUsesCellCentres) {
  const DomainSpec d = DomainSpec::real_grid(0.5, 4, 0.0);
  const GridFunction f = GridFunction::sample_1d(d, [](double x) { return x; });
  EXPECT_DOUBLE_EQ(f[0].real(), 0.25);
  EXPECT_DOUBLE_EQ(f[3].real(), 1.75);
}

TEST(Signals, CyclicCharacterIsExact) {
  const std::int64_t n = 97;
  const DomainSpec d = DomainSpec::cyclic(n);
  for (std::int64_t k : {1, 13, 96, -5, 200}) {
    const GridFunction f = eval_character(Character{{static_cast<double>(k)}}, d);
    for (std::int64_t x = 0; x < n; ++x) {
      const Complex want = testing::cyclic_char(k, x, n);
      EXPECT_NEAR(std::abs(f[static_cast<std::size_t>(x)] - want), 0.0, 1e-15);
    }
  }
}

TEST(Signals, CharacterCanonicalAndGroupLaw) {
  const DomainSpec c = DomainSpec::cyclic(10);
  EXPECT_EQ(Character{{13.0}}.canonical(c), Character{{3.0}});
  EXPECT_EQ(Character{{-1.0}}.canonical(c), Character{{9.0}});
  const DomainSpec z = DomainSpec::integer_lattice(10, 0);
  EXPECT_NEAR(Character{{1.25}}.canonical(z).frequency[0], 0.25, 1e-15);
  const Character a{{0.3}}, b{{-0.1}};
  EXPECT_NEAR((a * b).frequency[0], 0.2, 1e-15);
  EXPECT_EQ(a.conjugate().frequency[0], -0.3);
  const DomainSpec r = DomainSpec::real_grid(0.1, 20, 0.0);
  const Point x = {0.7};
  EXPECT_NEAR(std::abs(a.at(r, x) * b.at(r, x) - (a * b).at(r, x)), 0.0, 1e-14);
}

TEST(Signals, DualGrids) {
  const auto full = full_dual_grid(DomainSpec::product({DomainSpec::cyclic(3), DomainSpec::cyclic(4)}));
  EXPECT_EQ(full.size(), 12u);
  const auto lattice = lattice_dual_grid(DomainSpec::real_grid(0.5, 16, -4.0), 3);
  ASSERT_EQ(lattice.size(), 7u);
  EXPECT_NEAR(lattice.front().frequency[0], -3.0 / 8.0, 1e-15);
}

TEST(Signals, TrigPolynomialMergesAndMultiplies) {
  TrigPolynomial p;
  p.add({1.0, 0.0}, Character{{0.5}});
  p.add({2.0, 0.0}, Character{{0.5}});
  p.add({0.0, 1.0}, Character{{-1.0}});
  EXPECT_EQ(p.size(), 2u);
  EXPECT_NEAR(std::abs(p.coefficient(Character{{0.5}}) - Complex(3.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(p.coefficient_l1(), 4.0, 1e-15);
  const DomainSpec d = DomainSpec::real_grid(0.125, 64, -4.0);
  const TrigPolynomial q = p * p;
  const GridFunction fp = eval_trig_poly(p, d);
  const GridFunction fq = eval_trig_poly(q, d);
  const GridFunction prod = fp * fp;
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(std::abs(prod[i] - fq[i]), 0.0, 1e-12);
}

TEST(Signals, AtomicMeasureTotalVariation) {
  const AtomicMeasure mu({{{0.0}, {3.0, 4.0}}, {{1.0}, {-1.0, 0.0}}});
  EXPECT_DOUBLE_EQ(mu.total_variation(), 6.0);
}

TEST(Signals, ReflectAndInvolutionOnCyclic) {
  const GridFunction f = random_cyclic(9, 7);
  const GridFunction r = reflect(f);
  const GridFunction inv = involution(f);
  for (std::size_t x = 0; x < 9; ++x) {
    EXPECT_EQ(r[x], f[(9 - x) % 9]);
    EXPECT_EQ(inv[x], std::conj(f[(9 - x) % 9]));
  }
  const GridFunction twice = involution(inv);
  for (std::size_t x = 0; x < 9; ++x) EXPECT_EQ(twice[x], f[x]);
}

TEST(Signals, ReflectOnSymmetricRealGrid) {
  const DomainSpec d = DomainSpec::symmetric_real_grid(0.25, 16);
  const GridFunction f = GridFunction::sample_1d(d, [](double x) { return x * x * x + 1.0; });
  const GridFunction r = reflect(f);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(r[i].real(), f[15 - i].real(), 0.0);
  EXPECT_THROW(reflect(GridFunction::zeros(DomainSpec::real_grid(0.25, 16, 0.0))), DomainError);
  EXPECT_THROW(reflect(GridFunction::zeros(DomainSpec::integer_lattice(6, 0))), DomainError);
  EXPECT_NO_THROW(reflect(GridFunction::zeros(DomainSpec::integer_lattice(7, -3))));
}

TEST(Signals, TranslateCyclicShifts) {
  const GridFunction f = random_cyclic(11, 8);
  const std::vector<std::int64_t> shift = {3};
  const GridFunction g = translate_cells(f, shift);
  for (std::size_t x = 0; x < 11; ++x) EXPECT_EQ(g[x], f[(x + 11 - 3) % 11]);
  EXPECT_TRUE(g.clean());
}

TEST(Signals, TranslateZeroExtendMarksMargins) {
  const DomainSpec d = DomainSpec::integer_lattice(10, 0);
  Rng rng(9);
  std::vector<Complex> v = rng.complex_vector(10);
  v[8] = v[9] = 0.0;
  const GridFunction f(d, v);
  const Point t = {2.0};
  const GridFunction g = translate(f, t);
  EXPECT_EQ(g.margin(0).lo, 2u);
  EXPECT_EQ(g.margin(0).hi, 0u);
  EXPECT_FALSE(g.clean());
  for (std::size_t x = 2; x < 10; ++x) EXPECT_EQ(g[x], f[x - 2]);
  const auto [lo, hi] = g.valid_range(0);
  EXPECT_EQ(lo, 2);
  EXPECT_EQ(hi, 10);
  // compact support makes zero extension exact
  const GridFunction gc = translate(f.as_compact(), t);
  EXPECT_TRUE(gc.clean());
  EXPECT_EQ(gc[0], Complex(0.0, 0.0));
  // shifting nonzero samples off the grid loses data
  EXPECT_FALSE(translate(f.as_compact(), Point{3.0}).clean());
}

TEST(Signals, TranslateRecordsSnapDistance) {
  const GridFunction f = GridFunction::zeros(DomainSpec::real_grid(0.5, 20, 0.0));
  const Point t = {1.2};
  EXPECT_NEAR(translate(f, t).metadata().snap_distance, 0.2, 1e-12);
}

TEST(Signals, PointwiseDispatcherAgreesWithOperators) {
  const GridFunction f = random_cyclic(6, 10);
  const GridFunction g = random_cyclic(6, 11);
  const GridFunction s = pointwise(PointwiseOp::kSub, f, &g);
  const GridFunction a = abs(f);
  const GridFunction sc = pointwise(PointwiseOp::kScale, f, nullptr, {0.0, 2.0});
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(s[i], f[i] - g[i]);
    EXPECT_EQ(a[i].real(), std::abs(f[i]));
    EXPECT_EQ(sc[i], Complex(0.0, 2.0) * f[i]);
  }
  EXPECT_THROW(pointwise(PointwiseOp::kAdd, f), ArgumentError);
  EXPECT_THROW(f + random_cyclic(7, 1), DomainError);
}

TEST(Signals, SupNormSkipsContaminatedCells) {
  std::vector<Complex> v(8, 1.0);
  v[0] = 100.0;
  SampleMetadata meta;
  meta.contaminated = {Margin{1, 0}};
  const GridFunction f(DomainSpec::integer_lattice(8, 0), v, meta);
  EXPECT_DOUBLE_EQ(sup_norm(f), 1.0);
}

TEST(Signals, CombineMetadataTakesWorstMargins) {
  const DomainSpec d = DomainSpec::integer_lattice(8, 0);
  SampleMetadata a, b;
  a.contaminated = {Margin{2, 0}};
  b.contaminated = {Margin{1, 3}};
  const GridFunction f(d, std::vector<Complex>(8), a);
  const GridFunction g(d, std::vector<Complex>(8), b);
  EXPECT_EQ((f + g).margin(0), (Margin{2, 3}));
}

}  // namespace
}  // namespace apkit
