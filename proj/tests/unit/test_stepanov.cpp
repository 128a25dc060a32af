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
#include "apkit/stepanov.hpp"
#include "oracles.hpp"

namespace apkit {
namespace {

using testing::C;
using testing::Rng;

std::vector<C> to_vector(const GridFunction& f) { return {f.samples().begin(), f.samples().end()}; }

TEST(Stepanov, AbsPowShortcuts) {
  EXPECT_EQ(abs_pow({3.0, 4.0}, 1.0), 5.0);
  EXPECT_EQ(abs_pow({3.0, 4.0}, 2.0), 25.0);
  EXPECT_EQ(abs_pow({0.0, 0.0}, 0.5), 0.0);
  EXPECT_NEAR(abs_pow({3.0, 4.0}, 3.0), 125.0, 1e-12);
}

TEST(Stepanov, CyclicNormMatchesBruteForce) {
  Rng rng(20);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(3, 40));
    const auto w = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(n)));
    const double p = trial % 3 == 0 ? 1.0 : rng.uniform(1.0, 4.0);
    const GridFunction f(DomainSpec::cyclic(n), rng.complex_vector(n));
    const StepanovNorm got = stepanov_norm(f, Window::box({0.0}, {static_cast<double>(w)}), p);
    EXPECT_NEAR(got.value, testing::direct_cyclic_stepanov(to_vector(f), w, p), 1e-12);
    EXPECT_EQ(got.windows, n);
  }
}

TEST(Stepanov, OpenNormUsesOnlyValidWindows) {
  Rng rng(21);
  std::vector<Complex> v = rng.complex_vector(30);
  v[1] = 1e6;  // inside the contaminated margin, must be ignored
  SampleMetadata meta;
  meta.contaminated = {Margin{2, 3}};
  const GridFunction f(DomainSpec::integer_lattice(30, 0), v, meta);
  const StepanovNorm got = stepanov_norm(f, Window::box({0.0}, {4.0}), 2.0);
  EXPECT_NEAR(got.value, testing::direct_open_stepanov(v, 2, 27, 4, 2.0), 1e-12);
  EXPECT_EQ(got.windows, 22u);
}

TEST(Stepanov, ArgmaxIsFirstMaximisingWindow) {
  std::vector<Complex> v(12, 0.0);
  v[3] = 1.0;
  const GridFunction f(DomainSpec::integer_lattice(12, 0), v);
  const StepanovNorm got = stepanov_norm(f, Window::box({0.0}, {2.0}), 1.0);
  EXPECT_DOUBLE_EQ(got.value, 0.5);
  ASSERT_EQ(got.argmax.size(), 1u);
  EXPECT_DOUBLE_EQ(got.argmax[0], 2.0);
}

TEST(Stepanov, TooWideWindowIsASupportError) {
  const GridFunction f = GridFunction::zeros(DomainSpec::integer_lattice(5, 0));
  EXPECT_THROW(stepanov_norm(f, Window::box({0.0}, {6.0}), 1.0), SupportError);
}

TEST(Stepanov, NormInequalities) {
  Rng rng(22);
  const DomainSpec d = DomainSpec::real_grid(1.0 / 16, 256, 0.0);
  const Window k = Window::box({0.0}, {1.0});
  for (int trial = 0; trial < 20; ++trial) {
    const GridFunction f(d, rng.complex_vector(d.size()));
    const GridFunction g(d, rng.complex_vector(d.size()));
    const double nf = stepanov_norm(f, k, 1.0).value;
    const double ng = stepanov_norm(g, k, 1.0).value;
    EXPECT_LE(stepanov_norm(f + g, k, 1.0).value, nf + ng + 1e-12);
    EXPECT_LE(nf, stepanov_norm(f, k, 2.0).value + 1e-12);
    EXPECT_LE(stepanov_norm(f, k, 2.0).value, sup_norm(f) + 1e-12);
    EXPECT_NEAR(stepanov_norm(Complex(0.0, 3.0) * f, k, 1.0).value, 3.0 * nf, 1e-12);
  }
}

TEST(Stepanov, EquivalenceBoundsHold) {
  Rng rng(23);
  const DomainSpec d = DomainSpec::real_grid(0.125, 320, -20.0);
  for (int trial = 0; trial < 25; ++trial) {
    const double p = rng.uniform(1.0, 3.0);
    const Window k1 = Window::box({-0.125 * rng.integer(0, 8)}, {0.125 * rng.integer(1, 16)});
    const Window k2 = Window::box({0.0}, {0.125 * rng.integer(1, 24)});
    std::vector<Complex> v(d.size());
    // sparse bumps make the two windows disagree as much as possible
    for (auto& z : v) z = rng.uniform() < 0.05 ? rng.complex(5.0) : Complex{};
    const GridFunction f(d, v);
    const EquivalenceBounds b = equivalence_bounds(k1, k2, p);
    const double n1 = stepanov_norm(f, k1, p).value;
    const double n2 = stepanov_norm(f, k2, p).value;
    EXPECT_LE(b.c1 * n2, n1 * (1 + 1e-12) + 1e-12);
    EXPECT_LE(n1, b.c2 * n2 * (1 + 1e-12) + 1e-12);
  }
  const EquivalenceBounds same = equivalence_bounds(Window::unit(1), Window::unit(1), 2.0);
  EXPECT_DOUBLE_EQ(same.c1, 1.0);
  EXPECT_DOUBLE_EQ(same.c2, 1.0);
}

TEST(Stepanov, ScanTranslationsAndStride) {
  const DomainSpec d = DomainSpec::real_grid(0.5, 40, 0.0);
  const auto ts = scan_translations(d, ScanRange::interval(0.2, 3.0, 2));
  ASSERT_EQ(ts.size(), 3u);
  EXPECT_EQ(ts[0][0], 1);
  EXPECT_EQ(ts[2][0], 5);
  const Point t = translation_point(d, ts[1]);
  EXPECT_DOUBLE_EQ(t[0], 1.5);
}

TEST(Stepanov, PeriodMaxGapIncludesEnds) {
  const DomainSpec d = DomainSpec::integer_lattice(50, 0);
  const ScanRange r = ScanRange::interval(0.0, 10.0);
  EXPECT_DOUBLE_EQ(period_max_gap(d, r, {{{3.0}, 0.0}, {{4.0}, 0.0}}), 6.0);
  EXPECT_TRUE(std::isinf(period_max_gap(d, r, {})));
}

TEST(Stepanov, PeriodicFunctionHasExactPeriods) {
  const DomainSpec d = DomainSpec::real_grid(1.0 / 16, 16 * 40, -20.0);
  const GridFunction f = GridFunction::sample_1d(d, [](double x) { return std::cos(std::numbers::pi * x / 2.0); });
  const AlmostPeriodReport r = almost_period_scan(f, Window::unit(1), 1.0, 1e-9, ScanRange::interval(0.0, 12.0), 4.5);
  ASSERT_EQ(r.periods.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(r.periods[i].t[0], 4.0 * static_cast<double>(i));
  EXPECT_DOUBLE_EQ(r.max_gap, 4.0);
  EXPECT_TRUE(r.relatively_dense);
  EXPECT_EQ(r.candidates, 12u * 16u + 1u);
}

TEST(Stepanov, TranslationDistanceOnCyclicMatchesDirect) {
  Rng rng(24);
  const GridFunction f(DomainSpec::cyclic(20), rng.complex_vector(20));
  const std::vector<std::int64_t> shift = {7};
  const GridFunction g = translate_cells(f, shift);
  std::vector<C> diff(20);
  for (std::size_t i = 0; i < 20; ++i) diff[i] = f[i] - g[i];
  const Window k = Window::box({0.0}, {5.0});
  EXPECT_NEAR(translation_distance(f, shift, k, 1.5), testing::direct_cyclic_stepanov(diff, 5, 1.5), 1e-12);
  EXPECT_NEAR(stepanov_distance(f, g, k, 1.5), testing::direct_cyclic_stepanov(diff, 5, 1.5), 1e-12);
}

TEST(Stepanov, TruncateClampsModulus) {
  const GridFunction f(DomainSpec::cyclic(3), {{3.0, 4.0}, {0.5, 0.0}, {0.0, -2.0}});
  const GridFunction t = truncate(f, 1.0);
  EXPECT_NEAR(std::abs(t[0] - Complex(0.6, 0.8)), 0.0, 1e-15);
  EXPECT_EQ(t[1], Complex(0.5, 0.0));
  EXPECT_NEAR(std::abs(t[2] - Complex(0.0, -1.0)), 0.0, 1e-15);
}

TEST(Stepanov, MollifyIsBoxAverage) {
  Rng rng(25);
  const std::size_t n = 23;
  const GridFunction f(DomainSpec::cyclic(n), rng.complex_vector(n));
  EXPECT_EQ(mollifier_half_width(f.domain(), 2.0), (std::vector<std::size_t>{2}));
  const GridFunction m = mollify(f, 2.0);
  for (std::size_t x = 0; x < n; ++x) {
    C acc{};
    for (std::size_t j = 0; j < 5; ++j) acc += f[(x + n + j - 2) % n];
    EXPECT_NEAR(std::abs(m[x] - acc / 5.0), 0.0, 1e-14);
  }
  const GridFunction c = mollify(GridFunction::constant(DomainSpec::real_grid(0.1, 50, 0.0), 2.0), 0.3);
  const auto [lo, hi] = c.valid_range(0);
  EXPECT_EQ(lo, 3);
  EXPECT_EQ(hi, 47);
  for (auto i = lo; i < hi; ++i) EXPECT_NEAR(c[static_cast<std::size_t>(i)].real(), 2.0, 1e-14);
  EXPECT_THROW(mollify(f, 0.2), ArgumentError);
}

TEST(Stepanov, EpsNetCoversAndVerifies) {
  const DomainSpec d = DomainSpec::real_grid(1.0 / 8, 8 * 30, -15.0);
  const GridFunction f = GridFunction::sample_1d(
      d, [](double x) { return std::cos(2.0 * std::numbers::pi * x / 3.0) + 0.5 * std::cos(x * std::numbers::sqrt2); });
  std::vector<Point> ts;
  for (int i = 0; i <= 40; ++i) ts.push_back({0.125 * i});
  const EpsNetCertificate cert = orbit_eps_net(f, Window::unit(1), 1.0, 0.4, ts);
  EXPECT_TRUE(cert.coverage_verdict);
  EXPECT_LT(cert.worst_uncovered_distance, 0.4);
  EXPECT_LT(cert.centers.size(), ts.size());
  EXPECT_TRUE(verify_eps_net(f, Window::unit(1), 1.0, ts, cert));
  EpsNetCertificate broken = cert;
  broken.centers.resize(1);
  broken.center_index.resize(1);
  for (auto& a : broken.assignment) a = 0;
  EXPECT_FALSE(verify_eps_net(f, Window::unit(1), 1.0, ts, broken));
}

TEST(Stepanov, BohrApproximationRecoversTrigPolynomial) {
  const DomainSpec d = DomainSpec::cyclic(32);
  TrigPolynomial p;
  p.add({1.0, 0.5}, Character{{3.0}});
  p.add({-0.25, 0.0}, Character{{17.0}});
  const GridFunction f = eval_trig_poly(p, d);
  const VanHoveSequence seq = VanHoveSequence::full_group(d);
  const BohrApproximation b =
      bohr_approximate(f, Window::box({0.0}, {4.0}), 1.0, 1e-9, seq, full_dual_grid(d));
  EXPECT_TRUE(b.success);
  EXPECT_LT(b.distance, 1e-12);
  EXPECT_EQ(b.polynomial.size(), 2u);
  EXPECT_NEAR(std::abs(b.polynomial.coefficient(Character{{17.0}}) - Complex(-0.25, 0.0)), 0.0, 1e-14);
}

}  // namespace
}  // namespace apkit
