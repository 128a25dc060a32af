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

#include "apkit/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "apkit/error.hpp"

namespace apkit::io {
namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ArgumentError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ArgumentError("not a number: '" + s + "'");
  return v;
}

std::int64_t to_int(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ArgumentError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw ArgumentError("not an integer: '" + s + "'");
  return v;
}

std::size_t to_size(const std::string& s) {
  const std::int64_t v = to_int(s);
  if (v <= 0) throw ArgumentError("expected a positive count, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

void emit(const Json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        emit(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& v) { return v.is_structured(); });
      out += '[';
      bool first = true;
      for (const Json& v : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        emit(v, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v))
        out += format_number(v);
      else
        out += '"' + format_number(v) + '"';
      return;
    }
    default:
      out += j.dump();
  }
}

std::string kind_name(AxisKind k) {
  switch (k) {
    case AxisKind::kReal: return "real";
    case AxisKind::kInteger: return "integer";
    case AxisKind::kCyclic: return "cyclic";
    case AxisKind::kTorus: return "torus";
  }
  return "?";
}

AxisKind axis_kind_from(const std::string& s) {
  if (s == "real") return AxisKind::kReal;
  if (s == "integer") return AxisKind::kInteger;
  if (s == "cyclic") return AxisKind::kCyclic;
  if (s == "torus") return AxisKind::kTorus;
  throw ArgumentError("unknown axis kind: " + s);
}

DomainKind domain_kind_from(const std::string& s) {
  if (s == "real-grid") return DomainKind::kRealGrid;
  if (s == "integer-lattice") return DomainKind::kIntegerLattice;
  if (s == "cyclic") return DomainKind::kCyclic;
  if (s == "torus-grid") return DomainKind::kTorusGrid;
  if (s == "product-of-specs") return DomainKind::kProduct;
  throw ArgumentError("unknown domain kind: " + s);
}

BoundaryMode mode_from(const std::string& s) {
  if (s == "wrap") return BoundaryMode::kWrap;
  if (s == "zero-extend") return BoundaryMode::kZeroExtend;
  throw ArgumentError("unknown boundary mode: " + s);
}

DomainSpec parse_factor(const std::string& text) {
  std::string body = text;
  std::optional<BoundaryMode> mode;
  if (const std::size_t at = body.find('@'); at != std::string::npos) {
    const std::string m = body.substr(at + 1);
    if (m == "wrap")
      mode = BoundaryMode::kWrap;
    else if (m == "zero")
      mode = BoundaryMode::kZeroExtend;
    else
      throw ArgumentError("unknown boundary suffix: @" + m);
    body = body.substr(0, at);
  }
  const std::vector<std::string> p = split(body, ':');
  const std::string& kind = p[0];
  const BoundaryMode zm = mode.value_or(BoundaryMode::kZeroExtend);
  if (kind == "cyclic" && p.size() == 2) return DomainSpec::cyclic(to_size(p[1]));
  if (kind == "integer" && (p.size() == 2 || p.size() == 3))
    return DomainSpec::integer_lattice(to_size(p[1]), p.size() == 3 ? to_int(p[2]) : 0, zm);
  if (kind == "real" && (p.size() == 3 || p.size() == 4)) {
    const double h = to_double(p[1]);
    const std::size_t n = to_size(p[2]);
    if (p.size() == 4 && p[3] == "sym") return DomainSpec::symmetric_real_grid(h, n, zm);
    return DomainSpec::real_grid(h, n, p.size() == 4 ? to_double(p[3]) : 0.0, zm);
  }
  if (kind == "torus" && (p.size() == 3 || p.size() == 4))
    return DomainSpec::torus_grid(to_double(p[1]), to_size(p[2]), p.size() == 4 ? to_double(p[3]) : 0.0);
  throw ArgumentError("cannot parse domain '" + text + "'");
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump(const Json& j, int indent) {
  std::string out;
  emit(j, indent, 0, out);
  return out;
}

Json number(double v) { return Json(v); }

DomainSpec parse_domain(std::string_view text) {
  const std::vector<std::string> parts = split(text, '*');
  std::vector<DomainSpec> factors;
  for (const std::string& p : parts) factors.push_back(parse_factor(p));
  if (factors.size() == 1) return factors.front();
  return DomainSpec::product(factors);
}

std::string format_domain(const DomainSpec& domain) {
  std::string out;
  for (std::size_t a = 0; a < domain.rank(); ++a) {
    const Axis& ax = domain.axis(a);
    if (a > 0) out += '*';
    switch (ax.kind) {
      case AxisKind::kCyclic: out += "cyclic:" + std::to_string(ax.n); break;
      case AxisKind::kInteger:
        out += "integer:" + std::to_string(ax.n) + ":" + std::to_string(static_cast<long long>(ax.origin));
        break;
      case AxisKind::kReal:
        out += "real:" + format_number(ax.h) + ":" + std::to_string(ax.n) + ":" + format_number(ax.origin);
        break;
      case AxisKind::kTorus:
        out += "torus:" + format_number(ax.h) + ":" + std::to_string(ax.n) + ":" + format_number(ax.origin);
        break;
    }
    if (!ax.compact() && domain.boundary_mode() == BoundaryMode::kWrap) out += "@wrap";
  }
  return out;
}

Window parse_window(std::string_view text) {
  Point lo, hi;
  for (const std::string& axis : split(text, ',')) {
    const std::vector<std::string> p = split(axis, ':');
    if (p.size() != 2) throw ArgumentError("window axes are written lo:hi, got '" + axis + "'");
    lo.push_back(to_double(p[0]));
    hi.push_back(to_double(p[1]));
  }
  return Window::box(lo, hi);
}

Json to_json(const DomainSpec& domain) {
  Json axes = Json::array();
  for (const Axis& ax : domain.axes())
    axes.push_back({{"kind", kind_name(ax.kind)}, {"h", ax.h}, {"n", ax.n}, {"origin", ax.origin}});
  return {{"kind", to_string(domain.kind())}, {"axes", axes}, {"boundary_mode", to_string(domain.boundary_mode())}};
}

DomainSpec domain_from_json(const Json& j) {
  if (j.is_string()) return parse_domain(j.get<std::string>());
  try {
    std::vector<Axis> axes;
    for (const Json& a : j.at("axes")) {
      Axis ax;
      ax.kind = axis_kind_from(a.at("kind").get<std::string>());
      ax.h = a.value("h", 1.0);
      ax.n = a.at("n").get<std::size_t>();
      ax.origin = a.value("origin", 0.0);
      axes.push_back(ax);
    }
    return DomainSpec(domain_kind_from(j.at("kind").get<std::string>()), axes,
                      mode_from(j.value("boundary_mode", std::string("zero-extend"))));
  } catch (const Json::exception& e) {
    throw ArgumentError(std::string("bad domain JSON: ") + e.what());
  }
}

Json to_json(const Window& w) {
  Json lo = Json::array(), hi = Json::array();
  const Point h = w.hi();
  for (std::size_t a = 0; a < w.rank(); ++a) {
    lo.push_back(w.offset[a]);
    hi.push_back(h[a]);
  }
  return {{"lo", lo}, {"hi", hi}};
}

Window window_from_json(const Json& j) {
  if (j.is_string()) return parse_window(j.get<std::string>());
  try {
    return Window::box(j.at("lo").get<Point>(), j.at("hi").get<Point>());
  } catch (const Json::exception& e) {
    throw ArgumentError(std::string("bad window JSON: ") + e.what());
  }
}

Json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  return {j.value("re", 0.0), j.value("im", 0.0)};
}

Json to_json(const Character& chi) { return Json(chi.frequency); }

Json to_json(const TrigPolynomial& p) {
  Json terms = Json::array();
  for (const TrigTerm& t : p.terms())
    terms.push_back({{"frequency", t.character.frequency}, {"re", t.coefficient.real()}, {"im", t.coefficient.imag()}});
  return {{"terms", terms}};
}

TrigPolynomial trig_from_json(const Json& j) {
  try {
    TrigPolynomial p;
    for (const Json& t : j.at("terms")) {
      const Json& fr = t.at("frequency");
      Character chi{fr.is_number() ? std::vector<double>{fr.get<double>()} : fr.get<std::vector<double>>()};
      p.add(complex_from_json(t), chi);
    }
    return p;
  } catch (const Json::exception& e) {
    throw ArgumentError(std::string("bad trig polynomial JSON: ") + e.what());
  }
}

Json to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const Atom& a : mu.atoms())
    atoms.push_back({{"position", a.position}, {"re", a.weight.real()}, {"im", a.weight.imag()}});
  return {{"atoms", atoms}};
}

AtomicMeasure measure_from_json(const Json& j) {
  try {
    std::vector<Atom> atoms;
    for (const Json& a : j.at("atoms")) {
      const Json& pos = a.at("position");
      atoms.push_back({pos.is_number() ? Point{pos.get<double>()} : pos.get<Point>(), complex_from_json(a)});
    }
    return AtomicMeasure(std::move(atoms));
  } catch (const Json::exception& e) {
    throw ArgumentError(std::string("bad measure JSON: ") + e.what());
  }
}

Json to_json(const SampleMetadata& meta) {
  Json margins = Json::array();
  for (const Margin& m : meta.contaminated) margins.push_back({m.lo, m.hi});
  return {{"contaminated", margins},
          {"compact_support", meta.compact_support},
          {"provenance", meta.provenance},
          {"snap_distance", meta.snap_distance}};
}

namespace {

SampleMetadata metadata_from_json(const Json& j, std::size_t rank) {
  SampleMetadata meta;
  meta.contaminated.assign(rank, Margin{});
  if (j.contains("contaminated")) {
    const Json& m = j.at("contaminated");
    for (std::size_t a = 0; a < rank && a < m.size(); ++a) meta.contaminated[a] = {m[a][0], m[a][1]};
  }
  meta.compact_support = j.value("compact_support", false);
  meta.provenance = j.value("provenance", std::string());
  meta.snap_distance = j.value("snap_distance", 0.0);
  return meta;
}

Json point_json(const Point& p) { return Json(p); }

}  // namespace

Json to_json(const MeanEstimate& e) {
  Json rows = Json::array();
  for (const MeanRow& r : e.per_n) rows.push_back({{"n", r.n}, {"re", r.estimate.real()}, {"im", r.estimate.imag()}});
  return {{"value", to_json(e.value)},
          {"cauchy_gap", e.cauchy_gap},
          {"converged", e.converged},
          {"verdict", to_string(e.verdict)},
          {"y_uniformity_gap", e.y_uniformity_gap},
          {"tol", e.tol},
          {"n_requested", e.n_requested},
          {"n_available", e.n_available},
          {"per_n", rows}};
}

Json to_json(const WeylSeminorm& w) { return {{"plain", to_json(w.plain)}, {"sup", to_json(w.sup)}}; }

Json to_json(const StepanovNorm& s) {
  return {{"value", s.value}, {"argmax", point_json(s.argmax)}, {"windows", s.windows}, {"resolution", s.resolution}};
}

Json to_json(const AlmostPeriodReport& r) {
  Json periods = Json::array();
  for (const AlmostPeriod& p : r.periods) periods.push_back({{"t", point_json(p.t)}, {"distance", p.distance}});
  Json range = {{"lo", point_json(r.scan_range.lo)}, {"hi", point_json(r.scan_range.hi)}};
  if (!r.scan_range.stride.empty()) range["stride"] = r.scan_range.stride;
  return {{"norm_kind", to_string(r.norm_kind)},
          {"epsilon", r.epsilon},
          {"p", r.p},
          {"k", to_json(r.k)},
          {"scan_range", range},
          {"candidates", r.candidates},
          {"gap_bound", r.gap_bound},
          {"max_gap", r.max_gap},
          {"relatively_dense", r.relatively_dense},
          {"periods", periods}};
}

Json to_json(const EquiWeylReport& r) {
  Json j = to_json(r.report);
  j["uniform_n"] = r.uniform_n;
  j["n_available"] = r.n_available;
  j["support_exhausted"] = r.support_exhausted;
  Json per_t = Json::array();
  for (std::size_t i = 0; i < r.candidates.size(); ++i)
    per_t.push_back({{"t", point_json(r.candidates[i])}, {"n_t", r.per_t_n[i]}, {"distance", r.distance_at_n[i]}});
  j["per_t"] = per_t;
  return j;
}

Json to_json(const SpectrumReport& r) {
  Json lines = Json::array();
  for (const SpectralLine& l : r.lines)
    lines.push_back({{"frequency", to_json(l.character)},
                     {"re", l.coefficient.real()},
                     {"im", l.coefficient.imag()},
                     {"abs", std::abs(l.coefficient)},
                     {"gap", l.gap}});
  return {{"threshold", r.threshold},
          {"grid_size", r.freq_grid.size()},
          {"mean_square", r.mean_square},
          {"bessel_sum", r.bessel_sum},
          {"parseval_residual", r.parseval_residual},
          {"max_gap", r.max_gap},
          {"verdict", to_string(r.verdict)},
          {"lines", lines}};
}

Json to_json(const EberleinEstimate& e) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < e.points.size(); ++i)
    pts.push_back({{"x", point_json(e.points[i])}, {"estimate", to_json(e.estimates[i])}});
  return {{"verdict", to_string(e.verdict)},
          {"max_cauchy_gap", e.max_cauchy_gap},
          {"snap_distance", e.snap_distance},
          {"points", pts}};
}

Json to_json(const VanHoveReport& r) {
  Json rows = Json::array();
  for (const VanHoveRow& row : r.rows)
    rows.push_back({{"n", row.n}, {"boundary", row.boundary}, {"measure", row.measure}, {"ratio", row.ratio}});
  return {{"sequence", r.sequence},
          {"k", to_json(r.k)},
          {"tolerance", r.tolerance},
          {"nonincreasing", r.nonincreasing},
          {"verdict", r.verdict},
          {"rows", rows}};
}

Json to_json(const ClassifyReport& r) {
  Json classes = Json::array();
  for (const ClassResult& c : r.classes) {
    Json ev = Json::array();
    for (const ClassEvidence& e : c.evidence) {
      Json item = {{"epsilon", e.epsilon},
                   {"periods", e.periods},
                   {"max_gap", e.max_gap},
                   {"relatively_dense", e.relatively_dense}};
      if (c.name == "W1") item["uniform_n"] = e.uniform_n;
      ev.push_back(item);
    }
    Json cj = {{"class", c.name}, {"verdict", to_string(c.verdict)}, {"evidence", ev}};
    if (!c.note.empty()) cj["note"] = c.note;
    classes.push_back(cj);
  }
  return {{"n_effective", r.n_effective},
          {"one_cell_modulus", r.one_cell_modulus},
          {"uc_threshold", r.uc_threshold},
          {"upper_mean", r.upper_mean},
          {"upper_mean_gap", r.upper_mean_gap},
          {"chain_consistent", r.chain_consistent},
          {"classes", classes}};
}

Json to_json(const EpsNetCertificate& c) {
  Json centers = Json::array();
  for (const Point& p : c.centers) centers.push_back(point_json(p));
  return {{"epsilon", c.epsilon},
          {"centers", centers},
          {"center_index", c.center_index},
          {"assignment", c.assignment},
          {"assigned_distance", c.assigned_distance},
          {"coverage_verdict", c.coverage_verdict},
          {"worst_uncovered_distance", c.worst_uncovered_distance}};
}

Json to_json(const BohrApproximation& b) {
  return {{"polynomial", to_json(b.polynomial)},
          {"distance", b.distance},
          {"epsilon", b.epsilon},
          {"success", b.success},
          {"mollifier_distance", b.mollifier_distance},
          {"max_coefficient_gap", b.max_coefficient_gap}};
}

void write_csv(const GridFunction& f, std::ostream& out) {
  const DomainSpec& dom = f.domain();
  for (std::size_t a = 0; a < dom.rank(); ++a) out << 'x' << a << ',';
  out << "re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = dom.point(i);
    for (double v : x) out << format_number(v) << ',';
    out << format_number(f[i].real()) << ',' << format_number(f[i].imag()) << '\n';
  }
}

GridFunction read_csv(std::istream& in, const DomainSpec& domain) {
  const std::size_t d = domain.rank();
  std::vector<Complex> vals;
  vals.reserve(domain.size());
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells = split(line, ',');
    if (first) {
      first = false;
      char* end = nullptr;
      std::strtod(cells[0].c_str(), &end);
      if (end == cells[0].c_str()) continue;  // header
    }
    std::vector<double> nums;
    for (const std::string& c : cells) nums.push_back(to_double(c));
    if (nums.size() == d + 2)
      vals.emplace_back(nums[d], nums[d + 1]);
    else if (nums.size() == 2)
      vals.emplace_back(nums[0], nums[1]);
    else if (nums.size() == 1)
      vals.emplace_back(nums[0], 0.0);
    else
      throw ArgumentError("CSV row has " + std::to_string(nums.size()) + " columns");
  }
  if (vals.size() != domain.size())
    throw ArgumentError("CSV has " + std::to_string(vals.size()) + " rows, the domain has " +
                        std::to_string(domain.size()) + " cells");
  return GridFunction(domain, std::move(vals));
}

namespace {

constexpr char kMagic[8] = {'A', 'P', 'K', 'I', 'T', 'G', 'F', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw ArgumentError("truncated binary grid function");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace

void write_binary(const GridFunction& f, std::ostream& out) {
  const std::string header = dump({{"domain", to_json(f.domain())}, {"metadata", to_json(f.metadata())}}, -1);
  out.write(kMagic, sizeof kMagic);
  put_u64(out, header.size());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  for (const Complex& z : f.samples()) {
    put_u64(out, std::bit_cast<std::uint64_t>(z.real()));
    put_u64(out, std::bit_cast<std::uint64_t>(z.imag()));
  }
}

GridFunction read_binary(std::istream& in) {
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) throw ArgumentError("not an apkit binary grid function");
  const std::uint64_t len = get_u64(in);
  if (len > (1u << 26)) throw ArgumentError("binary header too large");
  std::string header(len, '\0');
  if (!in.read(header.data(), static_cast<std::streamsize>(len))) throw ArgumentError("truncated binary header");
  Json h;
  try {
    h = Json::parse(header);
  } catch (const Json::exception& e) {
    throw ArgumentError(std::string("bad binary header: ") + e.what());
  }
  const DomainSpec dom = domain_from_json(h.at("domain"));
  SampleMetadata meta = metadata_from_json(h.value("metadata", Json::object()), dom.rank());
  std::vector<Complex> vals(dom.size());
  for (Complex& z : vals) {
    const double re = std::bit_cast<double>(get_u64(in));
    const double im = std::bit_cast<double>(get_u64(in));
    z = {re, im};
  }
  return GridFunction(dom, std::move(vals), std::move(meta));
}

std::string spectrum_csv(const SpectrumReport& r) {
  std::ostringstream out;
  const std::size_t d = r.freq_grid.empty() ? (r.lines.empty() ? 1 : r.lines[0].character.frequency.size())
                                            : r.freq_grid[0].frequency.size();
  for (std::size_t a = 0; a < d; ++a) out << "freq" << a << ',';
  out << "re,im,gap\n";
  for (const SpectralLine& l : r.lines) {
    for (double v : l.character.frequency) out << format_number(v) << ',';
    out << format_number(l.coefficient.real()) << ',' << format_number(l.coefficient.imag()) << ','
        << format_number(l.gap) << '\n';
  }
  return out.str();
}

}  // namespace apkit::io
