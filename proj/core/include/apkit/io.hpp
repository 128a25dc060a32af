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

// Serialization: JSON for configuration and reports (numbers printed with
// 17 significant digits), CSV and a binary format for sampled functions,
// and the compact domain / window strings used on the command line.

#ifndef APKIT_IO_HPP_
#define APKIT_IO_HPP_

#include <iosfwd>
#include <string>
#include <string_view>

#include "apkit/convolution.hpp"
#include "apkit/domain.hpp"
#include "apkit/fourier_bohr.hpp"
#include "apkit/gallery.hpp"
#include "apkit/signals.hpp"
#include "apkit/stepanov.hpp"
#include "apkit/vendor/json.hpp"
#include "apkit/weyl.hpp"

namespace apkit::io {

using Json = nlohmann::ordered_json;

/// "%.17g"; non-finite values become "inf", "-inf" or "nan".
std::string format_number(double v);
/// Deterministic JSON text. Non-finite numbers are written as the strings
/// "inf" / "-inf" / "nan".
std::string dump(const Json& j, int indent = 2);
Json number(double v);

/// Domain strings: `cyclic:N`, `integer:N[:origin]`, `real:h:n[:origin]`,
/// `torus:h:n[:origin]`, optionally suffixed `@wrap` / `@zero`, and
/// products joined by `*`.
DomainSpec parse_domain(std::string_view text);
std::string format_domain(const DomainSpec& domain);
/// Windows: `lo:hi` per axis, axes joined by `,`.
Window parse_window(std::string_view text);

Json to_json(const DomainSpec& domain);
DomainSpec domain_from_json(const Json& j);
Json to_json(const Window& w);
Window window_from_json(const Json& j);
Json to_json(Complex z);
Complex complex_from_json(const Json& j);
Json to_json(const Character& chi);
Json to_json(const TrigPolynomial& p);
TrigPolynomial trig_from_json(const Json& j);
Json to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const Json& j);
Json to_json(const SampleMetadata& meta);

Json to_json(const MeanEstimate& e);
Json to_json(const WeylSeminorm& w);
Json to_json(const StepanovNorm& s);
Json to_json(const AlmostPeriodReport& r);
Json to_json(const EquiWeylReport& r);
Json to_json(const SpectrumReport& r);
Json to_json(const EberleinEstimate& e);
Json to_json(const VanHoveReport& r);
Json to_json(const ClassifyReport& r);
Json to_json(const EpsNetCertificate& c);
Json to_json(const BohrApproximation& b);

/// CSV with columns x0..x{d-1}, re, im and a header line.
void write_csv(const GridFunction& f, std::ostream& out);
/// Reads rows `x..., re, im`, `re, im` or `re` (a header line is skipped);
/// the row count must equal the domain size.
GridFunction read_csv(std::istream& in, const DomainSpec& domain);

/// Binary: "APKITGF1", u64 little-endian header length, JSON header with
/// domain and metadata, then re/im pairs as little-endian f64.
void write_binary(const GridFunction& f, std::ostream& out);
GridFunction read_binary(std::istream& in);

/// Spectrum lines as CSV: freq0..freq{d-1}, re, im, gap.
std::string spectrum_csv(const SpectrumReport& r);

}  // namespace apkit::io

#endif  // APKIT_IO_HPP_
