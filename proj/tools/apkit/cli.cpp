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

#include "apkit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "apkit/convolution.hpp"
#include "apkit/error.hpp"
#include "apkit/fourier_bohr.hpp"
#include "apkit/gallery.hpp"
#include "apkit/io.hpp"
#include "apkit/parallel.hpp"
#include "apkit/stepanov.hpp"
#include "apkit/weyl.hpp"

namespace apkit::cli {
namespace {

using io::Json;

// Raised for numeric outcomes that map to exit code 2.
struct NumericFailure : Error {
  using Error::Error;
};

struct Options {
  std::string config;
  std::string domain;
  std::string input;
  std::string gallery;
  std::string poly;
  std::string out;
  std::string format;
  std::string seq;
  std::string window;
  std::string range;
  std::string points;
  std::string with;
  std::string epsilons = "0.5";
  double h = 1.0 / 64.0;
  double extent = 8.0;
  double p = 1.0;
  double scale = 1.0;
  double tol = kDefaultMeanTolerance;
  double vh_tol = 0.05;
  double epsilon = 0.1;
  double threshold = 0.0;
  double gap_bound = 0.0;
  std::size_t nmax = 0;
  std::size_t stride = 1;
  std::int64_t max_index = 16;
  int threads = 0;
  bool strict = false;
  std::string kind = "stepanov";
  std::string name;
  CLI::Option* threshold_opt = nullptr;
  CLI::Option* gap_opt = nullptr;
  CLI::Option* nmax_opt = nullptr;
};

bool has(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

void add_output(CLI::App* app, Options& o, const std::string& default_format) {
  o.format = default_format;
  app->add_option("--out", o.out, "Write the result to a file instead of stdout");
  app->add_option("--format", o.format, "Output format")->capture_default_str();
  app->add_option("--config", o.config, "JSON config file (\"schema\": 1); flags override it");
  app->add_option("--threads", o.threads, "Worker thread cap (default: APKIT_THREADS or all cores)");
  app->add_flag("--strict", o.strict, "Treat non-convergence as a numeric failure");
}

void add_function(CLI::App* app, Options& o) {
  app->add_option("--domain", o.domain, "Domain, e.g. cyclic:256, real:0.01:1000:-5, torus:0.001:1000");
  app->add_option("--input", o.input, "Samples: CSV (needs --domain) or apkit binary (.bin)");
  app->add_option("--gallery", o.gallery, "Gallery function name");
  app->add_option("--poly", o.poly, "Trigonometric polynomial: JSON file or inline JSON");
  app->add_option("--h", o.h, "Cell width of the default real grid")->capture_default_str();
  app->add_option("--extent", o.extent, "Default real grid covers [-extent, extent)")->capture_default_str();
}

void add_sequence(CLI::App* app, Options& o) {
  app->add_option("--seq", o.seq,
                  "van Hove sequence: centered-cubes, centered-intervals, right-rays, left-rays, slab, full-group");
  app->add_option("--scale", o.scale, "Length unit of the sequence")->capture_default_str();
  app->add_option("--nmax", o.nmax, "Largest n (default: largest n that fits)");
  app->add_option("--tol", o.tol, "Relative convergence tolerance")->capture_default_str();
}

// ---------------------------------------------------------------------------
// Config files: every key not already given as a flag becomes "--key value".

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  for (const std::string& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

std::string config_value(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return io::format_number(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + config_value(v[i]);
    return s;
  }
  return io::dump(v, -1);
}

std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open config file " + path);
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ArgumentError(std::string("bad config JSON: ") + e.what());
  }
  if (!cfg.is_object() || cfg.value("schema", 0) != 1) throw ArgumentError("config needs \"schema\": 1");
  std::vector<std::string> out = args;
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    if (it.key() == "schema" || it.key() == "command") continue;
    std::string key = it.key();
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string flag = "--" + key;
    if (has_flag(args, flag)) continue;
    if (it.value().is_boolean()) {
      if (it.value().get<bool>()) out.push_back(flag);
      continue;
    }
    out.push_back(flag);
    out.push_back(config_value(it.value()));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ArgumentError("not a number: '" + item + "'");
    }
  }
  return out;
}

DomainSpec default_domain(const Options& o) {
  if (!(o.h > 0.0) || !(o.extent > 0.0)) throw ArgumentError("--h and --extent must be positive");
  const auto n = static_cast<std::size_t>(std::llround(2.0 * o.extent / o.h));
  return DomainSpec::real_grid(o.h, n, -0.5 * static_cast<double>(n) * o.h);
}

std::string read_text(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return arg;
  std::ifstream in(arg);
  if (!in) throw ArgumentError("cannot open " + arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GridFunction load_function_from(const Options& o, const std::string& input, const std::string& gallery,
                                const std::string& poly) {
  const int sources = !input.empty() + !gallery.empty() + !poly.empty();
  if (sources != 1) throw ArgumentError("give exactly one of --input, --gallery, --poly");
  if (!input.empty()) {
    const bool binary = input.size() > 4 && input.substr(input.size() - 4) == ".bin";
    std::ifstream in(input, binary ? std::ios::binary : std::ios::in);
    if (!in) throw ArgumentError("cannot open " + input);
    if (binary) return io::read_binary(in);
    if (o.domain.empty()) throw ArgumentError("CSV input needs --domain");
    return io::read_csv(in, io::parse_domain(o.domain));
  }
  const DomainSpec dom = o.domain.empty() ? default_domain(o) : io::parse_domain(o.domain);
  if (!gallery.empty()) return gallery_function(gallery, dom);
  Json j;
  try {
    j = Json::parse(read_text(poly));
  } catch (const Json::exception& e) {
    throw ArgumentError(std::string("bad polynomial JSON: ") + e.what());
  }
  return eval_trig_poly(io::trig_from_json(j), dom).as_compact(false);
}

GridFunction load_function(const Options& o) { return load_function_from(o, o.input, o.gallery, o.poly); }

VanHoveSequence make_sequence(const Options& o, const DomainSpec& dom) {
  const std::size_t d = dom.rank();
  std::string name = o.seq;
  if (name.empty()) {
    bool compact = true;
    for (const Axis& a : dom.axes()) compact = compact && a.compact();
    name = compact ? "full-group" : "centered-cubes";
  }
  if (name == "centered-cubes") return VanHoveSequence::centered_cubes(d, o.scale);
  if (name == "centered-intervals") return VanHoveSequence::centered_intervals(d, o.scale);
  if (name == "right-rays") return VanHoveSequence::right_rays(o.scale);
  if (name == "left-rays") return VanHoveSequence::left_rays(o.scale);
  if (name == "slab") return VanHoveSequence::slab();
  if (name == "full-group") return VanHoveSequence::full_group(dom);
  throw ArgumentError("unknown van Hove sequence: " + name);
}

VanHoveSequence sequence_by_name(const Options& o, std::size_t rank) {
  if (o.seq.empty() || o.seq == "centered-cubes") return VanHoveSequence::centered_cubes(rank, o.scale);
  if (o.seq == "centered-intervals") return VanHoveSequence::centered_intervals(rank, o.scale);
  if (o.seq == "right-rays") return VanHoveSequence::right_rays(o.scale);
  if (o.seq == "left-rays") return VanHoveSequence::left_rays(o.scale);
  if (o.seq == "slab") return VanHoveSequence::slab();
  throw ArgumentError("unknown van Hove sequence: " + o.seq);
}

// Largest n whose A_n, placed at 0, lies in the valid samples of f.
std::size_t fitting_n(const GridFunction& f, const VanHoveSequence& seq) {
  const DomainSpec& dom = f.domain();
  std::size_t best = 0;
  for (std::size_t n = 1; n <= 1000000; ++n) {
    CellBox box;
    try {
      box = to_cells(dom, seq.window(n));
    } catch (const Error&) {
      break;
    }
    bool ok = true;
    bool grows = false;
    for (std::size_t a = 0; a < dom.rank(); ++a) {
      if (dom.wraps(a)) continue;
      grows = true;
      const auto [lo, hi] = f.valid_range(a);
      if (box.start[a] < lo || box.start[a] + static_cast<std::int64_t>(box.count[a]) > hi) ok = false;
    }
    if (!ok) break;
    best = n;
    if (!grows && n >= seq.n_max()) break;  // compact: nothing to gain
  }
  if (best == 0) throw SupportError("A_1 does not fit the domain");
  return best;
}

std::size_t resolve_nmax(const Options& o, const GridFunction& f, const VanHoveSequence& seq) {
  if (o.nmax_opt && has(o.nmax_opt)) {
    if (o.nmax == 0) throw ArgumentError("--nmax must be positive");
    return o.nmax;
  }
  return fitting_n(f, seq);
}

Window resolve_window(const Options& o, std::size_t rank) {
  if (!o.window.empty()) return io::parse_window(o.window);
  return Window::unit(rank);
}

ScanRange resolve_range(const Options& o, std::size_t rank) {
  if (o.range.empty()) throw ArgumentError("--range lo:hi is required");
  const Window w = io::parse_window(o.range);
  if (w.rank() != rank) throw ArgumentError("--range rank does not match the domain");
  ScanRange r;
  r.lo = w.offset;
  r.hi = w.hi();
  r.stride.assign(rank, o.stride);
  return r;
}

double resolve_gap_bound(const Options& o, const ScanRange& r) {
  if (has(o.gap_opt)) return o.gap_bound;
  double len = 0.0;
  for (std::size_t a = 0; a < r.lo.size(); ++a) len = std::max(len, r.hi[a] - r.lo[a]);
  return 0.25 * len;
}

void check_estimate(const Options& o, const MeanEstimate& e, const std::string& what) {
  if (e.verdict == Verdict::kSupportExhausted)
    throw NumericFailure(what + ": support exhausted at n = " + std::to_string(e.n_available));
  if (o.strict && !e.converged) throw NumericFailure(what + ": not converged (gap " + io::format_number(e.cauchy_gap) + ")");
}

void write_result(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw ArgumentError("cannot write " + o.out);
  file << text;
}

std::string json_text(const Json& j) { return io::dump(j) + "\n"; }

// ---------------------------------------------------------------------------

std::string cmd_norm(const Options& o) {
  const GridFunction f = load_function(o);
  const std::size_t d = f.domain().rank();
  Json j = {{"command", "norm"}, {"kind", o.kind}, {"p", o.p}};
  if (o.kind == "stepanov") {
    const Window k = resolve_window(o, d);
    const StepanovNorm s = stepanov_norm(f, k, o.p);
    j["K"] = io::to_json(k);
    j["value"] = s.value;
    j["argmax"] = s.argmax;
    j["windows"] = s.windows;
    j["resolution"] = s.resolution;
  } else if (o.kind == "weyl") {
    const VanHoveSequence seq = make_sequence(o, f.domain());
    const std::size_t n_max = resolve_nmax(o, f, seq);
    const WeylSeminorm w = weyl_seminorm(f, seq, o.p, n_max, o.tol);
    check_estimate(o, w.plain, "weyl seminorm");
    j["sequence"] = seq.name();
    j["value"] = w.plain.value.real();
    j["estimate"] = io::to_json(w);
  } else if (o.kind == "sup") {
    j["value"] = sup_norm(f);
  } else {
    throw ArgumentError("unknown --kind " + o.kind + " (stepanov, weyl, sup)");
  }
  return json_text(j);
}

std::string cmd_scan(const Options& o) {
  const GridFunction f = load_function(o);
  const std::size_t d = f.domain().rank();
  const ScanRange range = resolve_range(o, d);
  const double gap = resolve_gap_bound(o, range);
  Json j = {{"command", "scan"}};
  if (o.kind == "stepanov") {
    j["report"] = io::to_json(almost_period_scan(f, resolve_window(o, d), o.p, o.epsilon, range, gap));
  } else if (o.kind == "equi-weyl") {
    const VanHoveSequence seq = make_sequence(o, f.domain());
    const std::size_t n_max = resolve_nmax(o, f, seq);
    const EquiWeylReport r = equi_weyl_scan(f, seq, o.p, o.epsilon, range, gap, n_max);
    if (r.n_available == 0) throw NumericFailure("equi-Weyl scan: support exhausted");
    j["sequence"] = seq.name();
    j["report"] = io::to_json(r);
  } else {
    throw ArgumentError("unknown --kind " + o.kind + " (stepanov, equi-weyl)");
  }
  return json_text(j);
}

std::vector<Character> frequency_grid(const Options& o, const DomainSpec& dom) {
  bool cyclic = true;
  for (const Axis& a : dom.axes()) cyclic = cyclic && a.kind == AxisKind::kCyclic;
  if (cyclic) return full_dual_grid(dom);
  if (dom.rank() != 1) throw ArgumentError("frequency grids on continuous domains are one-dimensional");
  return lattice_dual_grid(dom, o.max_index);
}

std::string cmd_spectrum(const Options& o) {
  const GridFunction f = load_function(o);
  const VanHoveSequence seq = make_sequence(o, f.domain());
  const std::size_t n_max = resolve_nmax(o, f, seq);
  const std::vector<Character> grid = frequency_grid(o, f.domain());
  std::optional<double> threshold;
  if (has(o.threshold_opt)) threshold = o.threshold;
  const SpectrumReport r = spectrum_scan(f, seq, grid, threshold, n_max);
  if (r.verdict == Verdict::kSupportExhausted) throw NumericFailure("spectrum: support exhausted");
  if (o.strict && r.verdict != Verdict::kConverged) throw NumericFailure("spectrum: coefficients not converged");
  if (o.format == "csv") return io::spectrum_csv(r);
  if (o.format != "json") throw ArgumentError("--format is csv or json");
  Json j = {{"command", "spectrum"}, {"sequence", seq.name()}, {"n_max", n_max}, {"report", io::to_json(r)}};
  return json_text(j);
}

std::vector<Point> parse_points(const std::string& s, std::size_t rank) {
  std::vector<Point> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    Point p = parse_list(item);
    if (p.size() != rank) throw ArgumentError("point '" + item + "' has the wrong rank");
    out.push_back(p);
  }
  if (out.empty()) out.emplace_back(rank, 0.0);
  return out;
}

std::string cmd_eberlein(const Options& o) {
  const GridFunction f = load_function(o);
  GridFunction g = f;
  if (o.with.empty() || o.with == "involution") {
    g = involution(f);
  } else if (o.with.rfind("gallery:", 0) == 0) {
    g = load_function_from(o, "", o.with.substr(8), "");
  } else if (o.with.rfind("poly:", 0) == 0) {
    g = load_function_from(o, "", "", o.with.substr(5));
  } else {
    g = load_function_from(o, o.with, "", "");
  }
  const VanHoveSequence seq = make_sequence(o, f.domain());
  const std::size_t n_max = has(o.nmax_opt) ? o.nmax : seq.n_max();
  const EberleinEstimate e = eberlein(f, g, seq, parse_points(o.points, f.domain().rank()), n_max, o.tol);
  if (e.verdict == Verdict::kSupportExhausted) throw NumericFailure("eberlein: support exhausted");
  if (o.strict && e.verdict != Verdict::kConverged) throw NumericFailure("eberlein: not converged");
  Json j = {{"command", "eberlein"}, {"sequence", seq.name()}, {"n_max", n_max}, {"result", io::to_json(e)}};
  return json_text(j);
}

std::string cmd_vanhove(const Options& o) {
  std::optional<DomainSpec> dom;
  if (!o.domain.empty()) dom = io::parse_domain(o.domain);
  const VanHoveSequence seq = dom && o.seq == "full-group" ? VanHoveSequence::full_group(*dom)
                                                             : sequence_by_name(o, dom ? dom->rank() : 1);
  const Window k = o.window.empty() ? Window::unit(seq.rank()) : io::parse_window(o.window);
  const std::size_t n_max = has(o.nmax_opt) ? o.nmax : 50;
  const VanHoveReport r = van_hove_report(seq, k, n_max, o.vh_tol, dom ? &*dom : nullptr);
  Json j = {{"command", "vanhove-check"}, {"report", io::to_json(r)}};
  return json_text(j);
}

std::string cmd_classify(const Options& o) {
  const GridFunction f = load_function(o);
  const std::size_t d = f.domain().rank();
  ClassifyConfig cfg;
  cfg.epsilons = parse_list(o.epsilons);
  cfg.scan_range = resolve_range(o, d);
  cfg.gap_bound = resolve_gap_bound(o, cfg.scan_range);
  if (has(o.nmax_opt)) cfg.n_max = o.nmax;
  if (!o.window.empty()) cfg.k = io::parse_window(o.window);
  if (!o.seq.empty()) cfg.seq = sequence_by_name(o, d);
  const ClassifyReport r = classify(f, cfg);
  Json j = {{"command", "classify"}, {"report", io::to_json(r)}};
  return json_text(j);
}

std::string cmd_gallery_list(const Options& o) {
  if (o.format == "json") return json_text(Json{{"gallery", gallery_names()}});
  std::string s;
  for (const std::string& n : gallery_names()) s += n + "\n";
  return s;
}

std::string cmd_gallery_emit(const Options& o) {
  const DomainSpec dom = o.domain.empty() ? default_domain(o) : io::parse_domain(o.domain);
  const GridFunction f = gallery_function(o.name, dom);
  std::ostringstream ss;
  if (o.format == "csv")
    io::write_csv(f, ss);
  else if (o.format == "bin")
    io::write_binary(f, ss);
  else
    throw ArgumentError("--format is csv or bin");
  return ss.str();
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"apkit: almost periodic function analysis on sampled groups", "apkit"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options o;

  CLI::App* norm = app.add_subcommand("norm", "Stepanov, Weyl or sup norm of a function");
  add_function(norm, o);
  add_sequence(norm, o);
  add_output(norm, o, "json");
  norm->add_option("--kind", o.kind, "stepanov, weyl or sup")->capture_default_str();
  norm->add_option("--p", o.p, "Exponent p >= 1")->capture_default_str();
  norm->add_option("--K", o.window, "Window K as lo:hi per axis (default unit box)");

  CLI::App* scan = app.add_subcommand("scan", "Scan translations for epsilon almost periods");
  add_function(scan, o);
  add_sequence(scan, o);
  add_output(scan, o, "json");
  scan->add_option("--kind", o.kind, "stepanov or equi-weyl")->capture_default_str();
  scan->add_option("--p", o.p, "Exponent p >= 1")->capture_default_str();
  scan->add_option("--K", o.window, "Window K as lo:hi per axis (default unit box)");
  scan->add_option("--epsilon", o.epsilon, "Almost-period tolerance")->capture_default_str();
  scan->add_option("--range", o.range, "Scanned translations lo:hi per axis");
  scan->add_option("--stride", o.stride, "Scan stride in cells")->capture_default_str();
  scan->add_option("--gap-bound", o.gap_bound, "Relative density bound L (default range/4)");

  CLI::App* spectrum = app.add_subcommand("spectrum", "Fourier-Bohr coefficients and spectral lines");
  add_function(spectrum, o);
  add_sequence(spectrum, o);
  add_output(spectrum, o, "csv");
  spectrum->add_option("--threshold", o.threshold, "Line threshold (default 1e-3 ||f||_{S^2})");
  spectrum->add_option("--max-index", o.max_index, "Continuous grids: frequencies m/extent, |m| <= max-index")
      ->capture_default_str();

  CLI::App* eb = app.add_subcommand("eberlein", "van Hove averaged convolution at points");
  add_function(eb, o);
  add_sequence(eb, o);
  add_output(eb, o, "json");
  eb->add_option("--with", o.with, "Second factor: involution (default), gallery:NAME, poly:FILE or a sample file");
  eb->add_option("--points", o.points, "Evaluation points, ';'-separated (default the origin)");

  CLI::App* vh = app.add_subcommand("vanhove-check", "K-boundary ratios of a box sequence");
  vh->add_option("--seq", o.seq, "centered-cubes, centered-intervals, right-rays, left-rays, slab, full-group");
  vh->add_option("--scale", o.scale, "Length unit of the sequence")->capture_default_str();
  vh->add_option("--domain", o.domain, "Domain (compact axes contribute no boundary)");
  vh->add_option("--K", o.window, "Window K (default unit box)");
  vh->add_option("--nmax", o.nmax, "Largest n (default 50)");
  vh->add_option("--tol", o.vh_tol, "Ratio tolerance of the verdict")->capture_default_str();
  add_output(vh, o, "json");

  CLI::App* cl = app.add_subcommand("classify", "Place f in the chain SAP, S1, W1, MAP");
  add_function(cl, o);
  add_output(cl, o, "json");
  cl->add_option("--seq", o.seq, "van Hove sequence (default centered-cubes)");
  cl->add_option("--scale", o.scale, "Length unit of the sequence")->capture_default_str();
  cl->add_option("--epsilon", o.epsilons, "Comma-separated epsilons")->capture_default_str();
  cl->add_option("--range", o.range, "Scanned translations lo:hi per axis");
  cl->add_option("--stride", o.stride, "Scan stride in cells")->capture_default_str();
  cl->add_option("--K", o.window, "Window K (default A_1)");
  cl->add_option("--gap-bound", o.gap_bound, "Relative density bound L (default range/4)");
  cl->add_option("--nmax", o.nmax, "Largest n (default 30)");

  CLI::App* gal = app.add_subcommand("gallery", "List or sample the gallery functions");
  gal->require_subcommand(1);
  CLI::App* gal_list = gal->add_subcommand("list", "Print the gallery names");
  add_output(gal_list, o, "text");
  CLI::App* gal_emit = gal->add_subcommand("emit", "Sample a gallery function");
  gal_emit->add_option("name", o.name, "Gallery function name")->required();
  gal_emit->add_option("--domain", o.domain, "Domain (default real grid [-extent, extent))");
  gal_emit->add_option("--h", o.h, "Cell width of the default real grid")->capture_default_str();
  gal_emit->add_option("--extent", o.extent, "Half-width of the default real grid")->capture_default_str();
  add_output(gal_emit, o, "csv");

  std::vector<std::string> args;
  try {
    args = merge_config(raw_args);
  } catch (const Error& e) {
    err << "apkit: " << e.what() << "\n";
    return kExitUsage;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "apkit: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  // several subcommands bind the same Options fields; use the active one's handles
  CLI::App* active = nullptr;
  for (CLI::App* sub : {norm, scan, spectrum, eb, vh, cl, gal_list, gal_emit})
    if (sub->parsed()) active = sub;
  o.nmax_opt = active->get_option_no_throw("--nmax");
  o.gap_opt = active->get_option_no_throw("--gap-bound");
  o.threshold_opt = active->get_option_no_throw("--threshold");
  if (o.threads > 0) set_thread_count(o.threads);

  try {
    std::string text;
    if (norm->parsed())
      text = cmd_norm(o);
    else if (scan->parsed())
      text = cmd_scan(o);
    else if (spectrum->parsed())
      text = cmd_spectrum(o);
    else if (eb->parsed())
      text = cmd_eberlein(o);
    else if (vh->parsed())
      text = cmd_vanhove(o);
    else if (cl->parsed())
      text = cmd_classify(o);
    else if (gal_list->parsed())
      text = cmd_gallery_list(o);
    else if (gal_emit->parsed())
      text = cmd_gallery_emit(o);
    write_result(o, text, out);
    return kExitOk;
  } catch (const NumericFailure& e) {
    err << "apkit: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const SupportError& e) {
    err << "apkit: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const ArgumentError& e) {
    err << "apkit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "apkit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "apkit: " << e.what() << "\n";
    return kExitNumeric;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace apkit::cli
