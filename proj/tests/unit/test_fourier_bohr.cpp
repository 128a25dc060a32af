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

#include "apkit/error.hpp"
#include "apkit/fourier_bohr.hpp"
#include "oracles.hpp"

namespace apkit {
namespace {

using testing::C;
using testing::Rng;

TEST(FourierBohr, CyclicCoefficientsAreTheDft) {
  Rng rng(40);
  const std::size_t n = 21;
  const DomainSpec d = DomainSpec::cyclic(n);
  const std::vector<C> v = rng.complex_vector(n);
  const GridFunction f(d, v);
  const VanHoveSequence seq = VanHoveSequence::full_group(d);
  for (std::int64_t k = -3; k < 25; ++k) {
    const MeanEstimate c = fb_coefficient(f, Character{{static_cast<double>(k)}}, seq);
    EXPECT_NEAR(std::abs(c.value - testing::direct_dft(v, k)), 0.0, 1e-14) << k;
  }
}

TEST(FourierBohr, SpectrumOfTwoLines) {
  const DomainSpec d = DomainSpec::cyclic(32);
  TrigPolynomial p;
  p.add({0.0, -1.0}, Character{{5.0}});
  p.add({2.0, 0.0}, Character{{3.0}});
  const GridFunction f = eval_trig_poly(p, d);
  const SpectrumReport r = spectrum_scan(f, VanHoveSequence::full_group(d), full_dual_grid(d));
  ASSERT_EQ(r.lines.size(), 2u);
  EXPECT_EQ(r.lines[0].character, Character{{3.0}});
  EXPECT_EQ(r.lines[1].character, Character{{5.0}});
  EXPECT_NEAR(std::abs(r.lines[0].coefficient - C(2.0, 0.0)), 0.0, 1e-14);
  EXPECT_NEAR(r.mean_square, 5.0, 1e-13);
  EXPECT_NEAR(r.parseval_residual, 0.0, 1e-13);
  EXPECT_EQ(r.coefficients.size(), 32u);
  const GridFunction back = eval_trig_poly(synthesize(r), d);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(std::abs(back[i] - f[i]), 0.0, 1e-13);
}

TEST(FourierBohr, ThresholdFiltersLines) {
  const DomainSpec d = DomainSpec::cyclic(16);
  TrigPolynomial p;
  p.add({1.0, 0.0}, Character{{1.0}});
  p.add({0.01, 0.0}, Character{{2.0}});
  const GridFunction f = eval_trig_poly(p, d);
  EXPECT_EQ(spectrum_scan(f, VanHoveSequence::full_group(d), full_dual_grid(d), 0.1).lines.size(), 1u);
  EXPECT_NEAR(default_line_threshold(f, VanHoveSequence::full_group(d)), 1e-3 * std::sqrt(1.0001), 1e-12);
}

TEST(FourierBohr, ParsevalOnRandomCyclicSignals) {
  Rng rng(41);
  for (std::size_t n : {5u, 16u, 33u}) {
    const DomainSpec d = DomainSpec::cyclic(n);
    const GridFunction f(d, rng.complex_vector(n));
    const ParsevalReport r = parseval_check(f, VanHoveSequence::full_group(d), full_dual_grid(d));
    EXPECT_NEAR(r.residual, 0.0, 1e-13);
    EXPECT_GT(r.mean_square, 0.0);
  }
}

// A_80 is the whole grid, so the lattice characters are orthogonal over it.
TEST(FourierBohr, BesselInequalityOnTheLine) {
  const DomainSpec d = DomainSpec::symmetric_real_grid(1.0 / 32, 32 * 80);
  const GridFunction f =
      GridFunction::sample_1d(d, [](double x) { return std::cos(0.5 * x) + std::sin(1.3 * x); });
  const ParsevalReport r = parseval_check(f, VanHoveSequence::centered_cubes(1), lattice_dual_grid(d, 20), 80);
  EXPECT_GE(r.residual, -1e-9);
}

TEST(FourierBohr, ParsevalRejectsAsymmetricSequence) {
  const DomainSpec d = DomainSpec::symmetric_real_grid(0.25, 64);
  EXPECT_THROW(parseval_check(GridFunction::zeros(d), VanHoveSequence::right_rays(), lattice_dual_grid(d, 2), 4),
               ArgumentError);
}

TEST(FourierBohr, AutocorrelationIdentityOnCyclic) {
  Rng rng(42);
  const DomainSpec d = DomainSpec::cyclic(19);
  const GridFunction f(d, rng.complex_vector(19));
  const auto rows = autocorr_identity_check(f, full_dual_grid(d), VanHoveSequence::full_group(d));
  ASSERT_EQ(rows.size(), 19u);
  for (const AutocorrIdentity& row : rows) {
    EXPECT_NEAR(row.discrepancy, 0.0, 1e-13);
    EXPECT_NEAR(row.lhs.real(), row.rhs, 1e-13);
  }
  const AutocorrIdentity single = autocorr_identity_check(f, Character{{4.0}}, VanHoveSequence::full_group(d));
  EXPECT_NEAR(single.rhs, rows[4].rhs, 1e-15);
}

TEST(FourierBohr, UniquenessFlagsOffGridSpectrum) {
  const DomainSpec d = DomainSpec::cyclic(16);
  const VanHoveSequence seq = VanHoveSequence::full_group(d);
  const GridFunction f = eval_character(Character{{5.0}}, d);
  const GridFunction zero = GridFunction::zeros(d);
  const std::vector<Character> grid = {Character{{0.0}}, Character{{1.0}}, Character{{2.0}}};
  const UniquenessReport off = uniqueness_distance(f, zero, seq, grid, Window::unit(1), 1.0);
  EXPECT_TRUE(off.flag);
  EXPECT_NEAR(off.distance, 1.0, 1e-14);
  const UniquenessReport on = uniqueness_distance(f, zero, seq, full_dual_grid(d), Window::unit(1), 1.0);
  EXPECT_FALSE(on.flag);
  EXPECT_NEAR(on.max_coefficient_discrepancy, 1.0, 1e-14);
}

}  // namespace
}  // namespace apkit
