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

#include <bit>
#include <cmath>
#include <stdexcept>

#include "apkit/box_sum.hpp"
#include "apkit/domain.hpp"
#include "apkit/error.hpp"
#include "apkit/parallel.hpp"
#include "oracles.hpp"

namespace apkit {
namespace {

using testing::Rng;

class ThreadGuard {
 public:
  explicit ThreadGuard(int n) { set_thread_count(n); }
  ~ThreadGuard() { set_thread_count(0); }
};

TEST(Parallel, MapPreservesIndexOrder) {
  ThreadGuard guard(4);
  const auto v = parallel_map(1000, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], static_cast<int>(i * i));
}

TEST(Parallel, PairwiseSumIsBitIdenticalAcrossThreadCounts) {
  Rng rng(1);
  std::vector<double> v(10007);
  for (double& x : v) x = rng.uniform(-1e8, 1e8);
  std::vector<double> sums;
  for (int t : {1, 2, 3, 7}) {
    ThreadGuard guard(t);
    const auto parts = parallel_map(v.size(), [&](std::size_t i) { return v[i] * 1.000001; });
    sums.push_back(pairwise_sum(parts));
  }
  for (double s : sums) EXPECT_EQ(std::bit_cast<std::uint64_t>(s), std::bit_cast<std::uint64_t>(sums[0]));
}

TEST(Parallel, PairwiseSumMatchesLongDoubleReference) {
  Rng rng(2);
  std::vector<double> v(4096);
  long double ref = 0.0L;
  for (double& x : v) {
    x = rng.uniform(0.0, 1.0);
    ref += x;
  }
  EXPECT_NEAR(pairwise_sum(v), static_cast<double>(ref), 1e-11);
}

TEST(Parallel, ArgmaxFirstPrefersSmallestIndex) {
  const std::vector<double> v = {1.0, 3.0, 2.0, 3.0};
  EXPECT_EQ(argmax_first(std::span<const double>(v)), 1u);
  EXPECT_EQ(argmax_first(std::span<const double>()), 0u);
}

TEST(Parallel, RethrowsFromWorkers) {
  ThreadGuard guard(3);
  EXPECT_THROW(parallel_for(500,
                            [](std::size_t i) {
                              if (i == 321) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(Domain, AxisSampling) {
  const DomainSpec r = DomainSpec::real_grid(0.5, 4, -1.0);
  EXPECT_DOUBLE_EQ(r.axis(0).coordinate(0), -0.75);
  EXPECT_DOUBLE_EQ(r.axis(0).coordinate(3), 0.75);
  EXPECT_DOUBLE_EQ(r.cell_volume(), 0.5);
  const DomainSpec z = DomainSpec::integer_lattice(5, -2);
  EXPECT_DOUBLE_EQ(z.axis(0).coordinate(0), -2.0);
  EXPECT_TRUE(z.discrete());
  const DomainSpec s = DomainSpec::symmetric_real_grid(0.25, 8);
  EXPECT_DOUBLE_EQ(s.axis(0).coordinate(0), -s.axis(0).coordinate(7));
}

TEST(Domain, FlatIndexRoundTripAndWrap) {
  const DomainSpec d = DomainSpec::product({DomainSpec::cyclic(3), DomainSpec::integer_lattice(4, 0)});
  EXPECT_EQ(d.size(), 12u);
  EXPECT_EQ(d.kind(), DomainKind::kProduct);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(d.flat_index(d.unflatten(i)), i);
  // axis 0 wraps, axis 1 does not
  const CellIndex wrapped = {-1, 2};
  EXPECT_EQ(d.flat_index(wrapped), d.flat_index(CellIndex{2, 2}));
  EXPECT_THROW(d.flat_index(CellIndex{0, 4}), SupportError);
}

TEST(Domain, SnapTranslationReportsDistance) {
  const DomainSpec d = DomainSpec::real_grid(0.1, 100, 0.0);
  double snap = -1.0;
  const Point t = {0.26};
  const CellIndex c = d.snap_translation(t, &snap);
  EXPECT_EQ(c[0], 3);
  EXPECT_NEAR(snap, 0.04, 1e-12);
}

TEST(Domain, WindowsToCells) {
  const DomainSpec d = DomainSpec::real_grid(0.25, 40, -5.0);
  const CellBox box = to_cells(d, Window::box({-1.0}, {1.0}));
  EXPECT_EQ(box.start[0], 16);
  EXPECT_EQ(box.count[0], 8u);
  EXPECT_THROW(to_cells(d, Window::box({0.0}, {0.3})), ArgumentError);
  EXPECT_DOUBLE_EQ(haar_measure(Window::box({0.0, 1.0}, {2.0, 4.0})), 6.0);
}

TEST(VanHove, FactoriesAndFlags) {
  const auto cc = VanHoveSequence::centered_cubes(2, 2.0);
  const Window w = cc.window(3);
  EXPECT_DOUBLE_EQ(w.offset[0], -3.0);
  EXPECT_DOUBLE_EQ(w.side[1], 6.0);
  EXPECT_TRUE(cc.symmetric());
  EXPECT_TRUE(cc.nested());
  EXPECT_FALSE(VanHoveSequence::right_rays().symmetric());
  EXPECT_TRUE(VanHoveSequence::full_group(DomainSpec::cyclic(5)).symmetric());
  EXPECT_TRUE(VanHoveSequence::right_rays().nested());
  EXPECT_EQ(VanHoveSequence::slab().rank(), 2u);
  EXPECT_EQ(cc.with_n_max(7).materialize().size(), 7u);
  EXPECT_THROW(VanHoveSequence::full_group(DomainSpec::real_grid(1.0, 4, 0.0)), DomainError);
}

TEST(VanHove, BoundaryMatchesDilationErosionOracle) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.integer(1, 3));
    std::vector<double> alo(d), ahi(d), klo(d), khi(d);
    for (std::size_t a = 0; a < d; ++a) {
      alo[a] = rng.uniform(-10, 0);
      ahi[a] = alo[a] + rng.uniform(0.5, 20);
      klo[a] = rng.uniform(-2, 0);
      khi[a] = rng.uniform(0, 2);
    }
    const double got = k_boundary_measure(Window::box(alo, ahi), Window::box(klo, khi));
    EXPECT_NEAR(got, testing::box_dilation_minus_erosion(alo, ahi, klo, khi), 1e-9);
  }
}

TEST(VanHove, CenteredIntervalsRatioIsTwoOverN) {
  const VanHoveReport r = van_hove_report(VanHoveSequence::centered_intervals(1), Window::box({-1.0}, {1.0}), 100);
  for (const VanHoveRow& row : r.rows) EXPECT_DOUBLE_EQ(row.ratio, 2.0 / static_cast<double>(row.n));
  EXPECT_TRUE(r.nonincreasing);
  EXPECT_TRUE(r.verdict);
}

TEST(VanHove, SlabIsNotVanHove) {
  const VanHoveReport r = van_hove_report(VanHoveSequence::slab(), Window::unit(2), 50);
  EXPECT_FALSE(r.verdict);
  for (const VanHoveRow& row : r.rows) EXPECT_GE(row.ratio, 2.0);
}

TEST(VanHove, CompactAxesCarryNoBoundary) {
  const DomainSpec c = DomainSpec::cyclic(16);
  const Window a = VanHoveSequence::full_group(c).window(1);
  EXPECT_DOUBLE_EQ(k_boundary_measure(a, Window::box({-1.0}, {2.0}), &c), 0.0);
  EXPECT_GT(k_boundary_measure(a, Window::box({-1.0}, {2.0})), 0.0);
}

TEST(VanHove, RejectsTooShortReports) {
  EXPECT_THROW(van_hove_report(VanHoveSequence::centered_intervals(1), Window::unit(1), 1), ArgumentError);
}

template <typename T>
T brute_box(const DomainSpec& d, const std::vector<T>& v, const CellIndex& start, const std::vector<std::size_t>& count) {
  T acc{};
  CellIndex off(d.rank(), 0), cell(d.rank());
  std::size_t total = 1;
  for (std::size_t c : count) total *= c;
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t a = 0; a < d.rank(); ++a) cell[a] = start[a] + off[a];
    acc += v[d.flat_index(cell)];
    for (std::size_t a = d.rank(); a-- > 0;) {
      if (++off[a] < static_cast<std::int64_t>(count[a])) break;
      off[a] = 0;
    }
  }
  return acc;
}

TEST(BoxSum, MatchesBruteForceIncludingWrapAndMultiplePeriods) {
  Rng rng(4);
  const DomainSpec d = DomainSpec::product({DomainSpec::cyclic(5), DomainSpec::integer_lattice(7, 0),
                                            DomainSpec::cyclic(3)});
  std::vector<long double> v(d.size());
  for (auto& x : v) x = rng.uniform(-1, 1);
  const RealBoxSum table(d, v);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t c1 = static_cast<std::size_t>(rng.integer(0, 7));
    const CellIndex start = {rng.integer(-12, 12), rng.integer(0, 7 - static_cast<std::int64_t>(c1)),
                             rng.integer(-5, 5)};
    const std::vector<std::size_t> count = {static_cast<std::size_t>(rng.integer(0, 13)), c1,
                                            static_cast<std::size_t>(rng.integer(0, 8))};
    EXPECT_NEAR(static_cast<double>(table.sum(start, count)), static_cast<double>(brute_box(d, v, start, count)),
                1e-12);
  }
  EXPECT_THROW(table.sum(CellIndex{0, 5, 0}, std::vector<std::size_t>{1, 3, 1}), SupportError);
}

TEST(BoxSum, OneDimensionalFastPath) {
  Rng rng(5);
  const DomainSpec d = DomainSpec::cyclic(11);
  std::vector<std::complex<long double>> v(d.size());
  for (auto& x : v) x = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  const ComplexBoxSum table(d, v);
  for (std::int64_t s = -20; s < 20; ++s) {
    for (std::size_t c = 0; c < 30; c += 3) {
      const CellIndex start = {s};
      const std::vector<std::size_t> count = {c};
      const auto got = table.sum(start, count);
      const auto want = brute_box(d, v, start, count);
      EXPECT_NEAR(static_cast<double>(std::abs(got - want)), 0.0, 1e-12);
    }
  }
}

}  // namespace
}  // namespace apkit
