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
#include <limits>
#include <sstream>

#include "apkit/error.hpp"
#include "apkit/io.hpp"
#include "oracles.hpp"

namespace apkit {
namespace {

using testing::Rng;

TEST(Io, NumbersRoundTripAndNonFinite) {
  EXPECT_EQ(io::format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(io::format_number(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(io::format_number(std::nan("")), "nan");
  io::Json j;
  j["a"] = std::numeric_limits<double>::infinity();
  j["b"] = {1, 2, 3};
  EXPECT_EQ(io::dump(j, -1), R"({"a":"inf","b":[1,2,3]})");
}

TEST(Io, DomainGrammar) {
  EXPECT_EQ(io::parse_domain("cyclic:12"), DomainSpec::cyclic(12));
  EXPECT_EQ(io::parse_domain("integer:10:-5"), DomainSpec::integer_lattice(10, -5));
  EXPECT_EQ(io::parse_domain("real:0.5:8:-2"), DomainSpec::real_grid(0.5, 8, -2.0));
  EXPECT_EQ(io::parse_domain("real:0.5:8:sym"), DomainSpec::symmetric_real_grid(0.5, 8));
  EXPECT_EQ(io::parse_domain("real:0.5:8@wrap").boundary_mode(), BoundaryMode::kWrap);
  EXPECT_EQ(io::parse_domain("torus:0.25:4"), DomainSpec::torus_grid(0.25, 4));
  const DomainSpec p = io::parse_domain("cyclic:3*integer:4");
  EXPECT_EQ(p.rank(), 2u);
  EXPECT_EQ(p.size(), 12u);
  EXPECT_THROW(io::parse_domain("sphere:3"), ArgumentError);
  EXPECT_THROW(io::parse_domain("cyclic:3@loop"), ArgumentError);
  for (const char* text : {"cyclic:7", "integer:5:-2", "real:0.25:40:-5", "torus:0.125:8:0", "cyclic:2*cyclic:3"})
    EXPECT_EQ(io::parse_domain(io::format_domain(io::parse_domain(text))), io::parse_domain(text)) << text;
}

TEST(Io, WindowGrammar) {
  const Window w = io::parse_window("-1:1,0:2.5");
  EXPECT_EQ(w, Window::box({-1.0, 0.0}, {1.0, 2.5}));
  EXPECT_THROW(io::parse_window("1"), ArgumentError);
}

TEST(Io, JsonRoundTrips) {
  const DomainSpec d = DomainSpec::product({DomainSpec::cyclic(3), DomainSpec::real_grid(0.5, 4, -1.0)});
  EXPECT_EQ(io::domain_from_json(io::to_json(d)), d);
  const Window w = Window::box({-0.5}, {2.0});
  EXPECT_EQ(io::window_from_json(io::to_json(w)), w);
  EXPECT_EQ(io::complex_from_json(io::to_json(Complex(1.5, -0.25))), Complex(1.5, -0.25));
  TrigPolynomial p;
  p.add({1.0, 2.0}, Character{{0.5}});
  p.add({-3.0, 0.0}, Character{{-1.25}});
  const TrigPolynomial q = io::trig_from_json(io::to_json(p));
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(q.coefficient(Character{{-1.25}}), Complex(-3.0, 0.0));
  const AtomicMeasure mu({{{1.0}, {0.5, 0.5}}});
  const AtomicMeasure nu = io::measure_from_json(io::to_json(mu));
  ASSERT_EQ(nu.atoms().size(), 1u);
  EXPECT_EQ(nu.atoms()[0].weight, Complex(0.5, 0.5));
}

TEST(Io, TrigPolynomialFromHandWrittenJson) {
  const auto j = io::Json::parse(R"({"terms": [{"frequency": [2], "re": 1, "im": -1}]})");
  const TrigPolynomial p = io::trig_from_json(j);
  EXPECT_EQ(p.coefficient(Character{{2.0}}), Complex(1.0, -1.0));
}

TEST(Io, CsvRoundTrip) {
  Rng rng(50);
  const DomainSpec d = DomainSpec::real_grid(0.25, 12, -1.5);
  const GridFunction f(d, rng.complex_vector(12));
  std::stringstream s;
  io::write_csv(f, s);
  const GridFunction g = io::read_csv(s, d);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(g[i], f[i]);
}

TEST(Io, CsvAcceptsRealOnlyColumn) {
  std::stringstream s("1.5\n-2\n3\n");
  const GridFunction g = io::read_csv(s, DomainSpec::cyclic(3));
  EXPECT_EQ(g[1], Complex(-2.0, 0.0));
  std::stringstream bad("1\n2\n");
  EXPECT_THROW(io::read_csv(bad, DomainSpec::cyclic(3)), ArgumentError);
}

TEST(Io, BinaryRoundTripKeepsMetadata) {
  Rng rng(51);
  const DomainSpec d = DomainSpec::integer_lattice(9, -4);
  SampleMetadata meta;
  meta.contaminated = {Margin{1, 2}};
  meta.provenance = "test";
  meta.compact_support = false;
  const GridFunction f(d, rng.complex_vector(9), meta);
  std::stringstream s;
  io::write_binary(f, s);
  const std::string bytes = s.str();
  EXPECT_EQ(bytes.substr(0, 8), "APKITGF1");
  const GridFunction g = io::read_binary(s);
  EXPECT_EQ(g.domain(), d);
  EXPECT_EQ(g.margin(0), (Margin{1, 2}));
  EXPECT_EQ(g.metadata().provenance, "test");
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(g[i], f[i]);
  std::stringstream junk("NOTAFILE");
  EXPECT_THROW(io::read_binary(junk), Error);
}

TEST(Io, SpectrumCsvHeader) {
  const DomainSpec d = DomainSpec::cyclic(4);
  const SpectrumReport r =
      spectrum_scan(eval_character(Character{{1.0}}, d), VanHoveSequence::full_group(d), full_dual_grid(d));
  const std::string csv = io::spectrum_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "freq0,re,im,gap");
}

}  // namespace
}  // namespace apkit
