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

#include <benchmark/benchmark.h>

#include <cmath>

#include "apkit/convolution.hpp"
#include "apkit/fourier_bohr.hpp"
#include "apkit/gallery.hpp"
#include "apkit/stepanov.hpp"

namespace {

using namespace apkit;

DomainSpec line(std::size_t cells_per_unit, double half_extent) {
  const double h = 1.0 / static_cast<double>(cells_per_unit);
  return DomainSpec::symmetric_real_grid(h, static_cast<std::size_t>(2 * half_extent) * cells_per_unit);
}

void BM_StepanovNorm(benchmark::State& state) {
  const GridFunction f = levitan_example(line(static_cast<std::size_t>(state.range(0)), 50));
  const Window k = Window::unit(1);
  for (auto _ : state) benchmark::DoNotOptimize(stepanov_norm(f, k, 2.0).value);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_StepanovNorm)->Arg(16)->Arg(64)->Arg(256);

void BM_AlmostPeriodScan(benchmark::State& state) {
  const GridFunction f = levitan_example(line(16, 60));
  const ScanRange r = ScanRange::interval(0.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(almost_period_scan(f, Window::unit(1), 1.0, 0.3, r, 10.0));
}
BENCHMARK(BM_AlmostPeriodScan)->Arg(10)->Arg(40);

void BM_SpectrumCyclic(benchmark::State& state) {
  const DomainSpec d = DomainSpec::cyclic(static_cast<std::size_t>(state.range(0)));
  const GridFunction f = levitan_example(d);
  const auto grid = full_dual_grid(d);
  const VanHoveSequence seq = VanHoveSequence::full_group(d);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_scan(f, seq, grid).mean_square);
}
BENCHMARK(BM_SpectrumCyclic)->Arg(64)->Arg(256)->Arg(1024);

void BM_EberleinPoints(benchmark::State& state) {
  const DomainSpec d = line(20, 60);
  const GridFunction f = levitan_example(d);
  std::vector<Point> pts;
  for (std::int64_t i = 0; i < state.range(0); ++i) pts.push_back({0.5 * static_cast<double>(i)});
  const VanHoveSequence seq = VanHoveSequence::centered_intervals(1);
  for (auto _ : state) benchmark::DoNotOptimize(eberlein(f, f, seq, pts, 40, 1.0).max_cauchy_gap);
}
BENCHMARK(BM_EberleinPoints)->Arg(1)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
