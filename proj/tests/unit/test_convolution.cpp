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

#include "apkit/convolution.hpp"
#include "apkit/error.hpp"
#include "oracles.hpp"

namespace apkit {
namespace {

using testing::C;
using testing::Rng;

std::vector<C> to_vector(const GridFunction& f) { return {f.samples().begin(), f.samples().end()}; }

TEST(Convolution, IndicatorsGiveHatFunction) {
  const double h = 1.0 / 32;
  const DomainSpec d = DomainSpec::real_grid(h, 32, 0.0);
  const GridFunction box = GridFunction::constant(d, 1.0).as_compact();
  const GridFunction hat = convolve(box, box);
  ASSERT_EQ(hat.size(), 63u);
  for (std::size_t i = 0; i < hat.size(); ++i) {
    const double x = hat.domain().point(i)[0];
    EXPECT_NEAR(hat[i].real(), 1.0 - std::abs(x - 1.0), h) << x;
  }
  EXPECT_TRUE(hat.metadata().compact_support);
}

TEST(Convolution, CyclicMatchesDirectSum) {
  Rng rng(30);
  const DomainSpec d = DomainSpec::cyclic(17);
  const GridFunction f(d, rng.complex_vector(17));
  const GridFunction g(d, rng.complex_vector(17));
  const auto want = testing::direct_cyclic_convolution(to_vector(f), to_vector(g));
  const GridFunction got = convolve(f, g);
  for (std::size_t i = 0; i < 17; ++i) EXPECT_NEAR(std::abs(got[i] - want[i]), 0.0, 1e-12);
}

TEST(Convolution, IsCommutativeOnCyclic) {
  Rng rng(31);
  const DomainSpec d = DomainSpec::cyclic(12);
  const GridFunction f(d, rng.complex_vector(12));
  const GridFunction g(d, rng.complex_vector(12));
  const GridFunction a = convolve(f, g);
  const GridFunction b = convolve(g, f);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-12);
}

TEST(Convolution, NeedsACompactFactorOnTheLine) {
  const GridFunction f = GridFunction::constant(DomainSpec::real_grid(0.1, 10, 0.0), 1.0);
  EXPECT_THROW(convolve(f, f), DomainError);
  EXPECT_NO_THROW(convolve(f, f.as_compact()));
}

TEST(Convolution, MeasureIsWeightedTranslates) {
  Rng rng(32);
  const DomainSpec d = DomainSpec::cyclic(10);
  const GridFunction f(d, rng.complex_vector(10));
  const AtomicMeasure mu({{{3.0}, {2.0, 0.0}}, {{-1.0}, {0.0, 1.0}}});
  const GridFunction got = convolve_measure(f, mu);
  for (std::size_t x = 0; x < 10; ++x) {
    const C want = 2.0 * f[(x + 7) % 10] + C(0.0, 1.0) * f[(x + 1) % 10];
    EXPECT_NEAR(std::abs(got[x] - want), 0.0, 1e-14);
  }
}

TEST(Eberlein, CyclicMatchesDirectAverage) {
  Rng rng(33);
  const std::size_t n = 15;
  const DomainSpec d = DomainSpec::cyclic(n);
  const GridFunction f(d, rng.complex_vector(n));
  const GridFunction g(d, rng.complex_vector(n));
  const auto want = testing::direct_cyclic_eberlein(to_vector(f), to_vector(g));
  std::vector<Point> pts;
  for (std::size_t x = 0; x < n; ++x) pts.push_back({static_cast<double>(x)});
  const EberleinEstimate e = eberlein(f, g, VanHoveSequence::full_group(d), pts);
  ASSERT_EQ(e.estimates.size(), n);
  for (std::size_t x = 0; x < n; ++x) EXPECT_NEAR(std::abs(e.estimates[x].value - want[x]), 0.0, 1e-13);
  EXPECT_EQ(e.verdict, Verdict::kConverged);
  const GridFunction m = eberlein_materialize(f, g, VanHoveSequence::full_group(d));
  for (std::size_t x = 0; x < n; ++x) EXPECT_NEAR(std::abs(m[x] - want[x]), 0.0, 1e-13);
}

TEST(Eberlein, IsBilinear) {
  Rng rng(34);
  const DomainSpec d = DomainSpec::symmetric_real_grid(1.0 / 16, 16 * 40);
  const GridFunction f(d, rng.complex_vector(d.size()));
  const GridFunction g(d, rng.complex_vector(d.size()));
  const GridFunction k(d, rng.complex_vector(d.size()));
  const C a(0.5, -2.0);
  const VanHoveSequence seq = VanHoveSequence::centered_cubes(1);
  const std::vector<Point> pts = {{0.0}, {1.5}, {-2.25}};
  const auto lhs = eberlein(a * f + g, k, seq, pts, 10, 1.0);
  const auto ef = eberlein(f, k, seq, pts, 10, 1.0);
  const auto eg = eberlein(g, k, seq, pts, 10, 1.0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    EXPECT_NEAR(std::abs(lhs.estimates[i].value - (a * ef.estimates[i].value + eg.estimates[i].value)), 0.0,
                1e-12);
}

TEST(Eberlein, CharactersPickOutMatchingFrequencies) {
  const DomainSpec d = DomainSpec::symmetric_real_grid(1.0 / 64, 64 * 120);
  const VanHoveSequence seq = VanHoveSequence::centered_cubes(1);
  const GridFunction f = eval_character(Character{{0.25}}, d);
  const GridFunction g = eval_character(Character{{0.25}}, d, {0.0, 2.0});
  const GridFunction other = eval_character(Character{{0.75}}, d);
  const std::vector<Point> pts = {{0.0}, {1.0}, {-3.0}};
  const auto same = eberlein(f, g, seq, pts, 50);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const C want = C(0.0, 2.0) * std::polar(1.0, 2.0 * std::numbers::pi * 0.25 * pts[i][0]);
    EXPECT_NEAR(std::abs(same.estimates[i].value - want), 0.0, 1e-9);
  }
  const auto diff = eberlein(f, other, seq, pts, 50);
  for (const MeanEstimate& e : diff.estimates) EXPECT_LT(std::abs(e.value), 1.0 / (std::numbers::pi * 0.5 * 50) + 1e-9);
}

}  // namespace
}  // namespace apkit
