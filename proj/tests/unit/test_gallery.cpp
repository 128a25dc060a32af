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
#include "apkit/gallery.hpp"

namespace apkit {
namespace {

const ClassResult& find(const ClassifyReport& r, const std::string& name) {
  for (const ClassResult& c : r.classes)
    if (c.name == name) return c;
  throw std::out_of_range(name);
}

ClassifyConfig line_config() {
  ClassifyConfig cfg;
  cfg.scan_range = ScanRange::interval(0.0, 8.0);
  cfg.gap_bound = 4.5;
  cfg.n_max = 30;
  return cfg;
}

DomainSpec line() { return DomainSpec::real_grid(1.0 / 64, 64 * 80, -40.0); }

TEST(Gallery, PeriodizedInverseSqrtValues) {
  const GridFunction f = periodized_inverse_sqrt(DomainSpec::real_grid(0.5, 4, 0.0));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(f[i].real(), 2.0, 1e-15);
  EXPECT_THROW(periodized_inverse_sqrt(DomainSpec::integer_lattice(4, 0)), DomainError);
}

TEST(Gallery, LevitanAndHalfStepValues) {
  const DomainSpec d = DomainSpec::integer_lattice(5, -2);
  const GridFunction lev = levitan_example(d);
  EXPECT_NEAR(lev[2].real(), std::sin(0.25), 1e-15);
  const double x = 1.0;
  EXPECT_NEAR(lev[3].real(), std::sin(1.0 / (2.0 + std::cos(x) + std::cos(std::numbers::sqrt2 * x))), 1e-15);
  const GridFunction hs = half_step(DomainSpec::real_grid(0.5, 8, -2.0));
  const double want[] = {0, 0, 0, 0, 0.25, 0.75, 1, 1};
  for (std::size_t i = 0; i < 8; ++i) EXPECT_DOUBLE_EQ(hs[i].real(), want[i]);
}

TEST(Gallery, NamesResolve) {
  const DomainSpec d = DomainSpec::real_grid(0.1, 10, 0.03);
  for (const std::string& name : gallery_names()) EXPECT_EQ(gallery_function(name, d).size(), 10u);
  EXPECT_THROW(gallery_function("nope", d), ArgumentError);
}

TEST(Classify, PeriodicFunctionPassesEveryClass) {
  const GridFunction f = GridFunction::sample_1d(line(), [](double x) { return std::cos(std::numbers::pi * x / 2.0); });
  const ClassifyReport r = classify(f, line_config());
  ASSERT_EQ(r.classes.size(), 4u);
  for (const ClassResult& c : r.classes) EXPECT_EQ(c.verdict, ClassVerdict::kPass) << c.name;
  EXPECT_TRUE(r.chain_consistent);
  EXPECT_NEAR(r.upper_mean, 2.0 / std::numbers::pi, 0.03);
}

TEST(Classify, HalfStepIsWeylButNotStepanov) {
  const ClassifyReport r = classify(half_step(line()), line_config());
  EXPECT_EQ(find(r, "SAP").verdict, ClassVerdict::kFail);
  EXPECT_EQ(find(r, "S1").verdict, ClassVerdict::kFail);
  EXPECT_EQ(find(r, "W1").verdict, ClassVerdict::kPass);
  EXPECT_EQ(find(r, "MAP").verdict, ClassVerdict::kPass);
  EXPECT_GT(r.n_effective, 0u);
}

TEST(Classify, UnboundedPeriodicFunctionIsStepanovButNotUniform) {
  const ClassifyReport r = classify(periodized_inverse_sqrt(line()), line_config());
  EXPECT_EQ(find(r, "SAP").verdict, ClassVerdict::kFail);
  EXPECT_EQ(find(r, "S1").verdict, ClassVerdict::kPass);
  EXPECT_GT(r.one_cell_modulus, r.uc_threshold);
}

}  // namespace
}  // namespace apkit
