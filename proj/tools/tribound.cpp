// tribound: colorings, weights, coboundary sumsets and type-III lower-bound
// certificates for oriented link diagrams.
//
// Exit codes: 0 success, 1 usage error, 2 validation or parse error,
// 3 reproduction mismatch or no certified bound, 4 resource cap exceeded.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tribound/tribound.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tribound;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kMismatch = 3, kCap = 4 };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::optional<fs::path> default_cache_dir() {
  if (const char* env = std::getenv("TRIBOUND_CACHE"); env && *env) return fs::path(env);
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "tribound";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "tribound";
  return std::nullopt;
}

struct CacheOptions {
  std::string dir;
  bool disabled = false;
  std::size_t cap = kDefaultLevelCap;

  DeltaCache make() const {
    if (disabled) return DeltaCache(cap);
    if (!dir.empty()) return DeltaCache(fs::path(dir), cap);
    if (auto d = default_cache_dir()) return DeltaCache(*d, cap);
    return DeltaCache(cap);
  }
};

void add_cache_options(CLI::App* cmd, CacheOptions& opts) {
  cmd->add_option("--cache", opts.dir, "Cache directory (default: $TRIBOUND_CACHE or ~/.cache/tribound)");
  cmd->add_flag("--no-cache", opts.disabled, "Do not read or write the on-disk cache");
  cmd->add_option("--cap", opts.cap, "Maximum cardinality of a Delta level")->check(CLI::PositiveNumber);
}

/// Sets up to `inline_limit` elements are printed inline; larger ones as a summary.
json set_summary(const std::vector<Int>& values, std::size_t inline_limit, const std::optional<fs::path>& dump) {
  if (values.size() <= inline_limit) return values;
  json j = {{"count", values.size()}, {"min", values.front()}, {"max", values.back()}};
  if (dump) j["file"] = dump->string();
  return j;
}

class Report {
 public:
  explicit Report(std::string command) : start_(std::chrono::steady_clock::now()) {
    body_ = {{"schema", 1}, {"command", std::move(command)}, {"inputs", json::object()}, {"results", json::object()}};
  }
  json& inputs() { return body_["inputs"]; }
  json& results() { return body_["results"]; }
  void cache(const DeltaCache& c) {
    const auto s = c.stats();
    body_["cache"] = {{"hits", s.hits}, {"misses", s.misses}};
  }
  json finish() {
    body_["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    return body_;
  }

 private:
  json body_;
  std::chrono::steady_clock::time_point start_;
};

int emit(Report& report, bool as_json, const std::function<void(const json&)>& text) {
  const json j = report.finish();
  if (as_json)
    std::cout << j.dump(2) << '\n';
  else
    text(j);
  return kOk;
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path, bool emit_derived, bool as_json) {
  Report report("validate");
  report.inputs() = {{"path", path}};
  const RawDiagram raw = parse_raw_diagram(read_file(path));
  const ValidationReport v = validate(raw);
  json violations = json::array();
  for (const auto& x : v.violations) violations.push_back({{"kind", to_string(x.kind)}, {"message", x.message}});
  report.results()["valid"] = v.ok();
  report.results()["violations"] = violations;
  if (v.ok()) {
    const Diagram d = build_diagram(raw);
    report.results()["counts"] = {{"crossings", d.crossings().size()},
                                  {"edges", d.edges().size()},
                                  {"arcs", d.arcs().size()},
                                  {"faces", d.faces().size()},
                                  {"components", d.components().size()}};
    if (emit_derived) report.results()["diagram"] = to_json(d, true);
  }
  emit(report, as_json, [&](const json& j) {
    const auto& r = j["results"];
    if (r["valid"].get<bool>()) {
      const auto& c = r["counts"];
      std::cout << "valid: " << c["crossings"] << " crossings, " << c["edges"] << " edges, " << c["arcs"]
                << " arcs, " << c["faces"] << " faces, " << c["components"] << " components\n";
      if (r.contains("diagram")) std::cout << r["diagram"]["derived"].dump(2) << '\n';
    } else {
      std::cout << "invalid:\n";
      for (const auto& x : r["violations"])
        std::cout << "  [" << x["kind"].get<std::string>() << "] " << x["message"].get<std::string>() << '\n';
    }
  });
  return v.ok() ? kOk : kInvalid;
}

int cmd_colorings(const std::string& path, int n, std::optional<int> outer, bool nontrivial_only, bool as_json) {
  Report report("colorings");
  report.inputs() = {{"path", path}, {"n", n}, {"nontrivial_only", nontrivial_only}};
  if (outer) report.inputs()["outer_color"] = *outer;
  const Diagram d = parse_diagram(read_file(path));
  const auto all = enumerate_colorings(d, Modulus(n));
  json list = json::array();
  for (std::size_t id = 0; id < all.size(); ++id) {
    if (nontrivial_only && is_trivial(all[id])) continue;
    json entry = outer ? to_json(extend_coloring(d, all[id], *outer)) : to_json(all[id]);
    entry["id"] = id;
    list.push_back(entry);
  }
  report.results() = {{"total", all.size()}, {"listed", list.size()}, {"colorings", list}};
  return emit(report, as_json, [&](const json& j) {
    const auto& r = j["results"];
    std::cout << r["listed"] << " colorings (of " << r["total"] << " total)\n";
    for (const auto& c : r["colorings"]) {
      std::cout << "  #" << c["id"] << " arcs=";
      for (const auto& p : c["arcs"]) std::cout << p[1];
      if (c.contains("regions")) {
        std::cout << " regions=";
        for (const auto& p : c["regions"]) std::cout << p[1];
      }
      std::cout << (c["trivial"].get<bool>() ? " (trivial)" : "") << '\n';
    }
  });
}

int cmd_weight(const std::string& path, int n, const std::string& f_text, int s, const std::string& which,
               bool as_json) {
  Report report("weight");
  report.inputs() = {{"path", path}, {"n", n}, {"f", f_text}, {"s", s}, {"coloring", which}};
  const Diagram d = parse_diagram(read_file(path));
  const auto f = CochainFn::parse(f_text, Modulus(n));
  const auto all = enumerate_colorings(d, f.modulus());
  json weights = json::array();
  auto add = [&](std::size_t id) {
    const auto ec = extend_coloring(d, all.at(id), s);
    json w = to_json(weight(d, ec, f));
    w["id"] = id;
    w["trivial"] = is_trivial(all[id]);
    weights.push_back(w);
  };
  if (which == "all") {
    for (std::size_t id = 0; id < all.size(); ++id) add(id);
    report.results()["phi"] = to_json(phi_set(d, s, f));
  } else {
    std::size_t id = 0;
    try {
      id = std::stoul(which);
    } catch (const std::exception&) {
      throw DomainError("--coloring expects an id or 'all'");
    }
    if (id >= all.size()) throw DomainError("coloring id out of range (" + std::to_string(all.size()) + " colorings)");
    add(id);
  }
  report.results()["weights"] = weights;
  return emit(report, as_json, [&](const json& j) {
    const auto& r = j["results"];
    for (const auto& w : r["weights"])
      std::cout << "  #" << w["id"] << " W = " << w["value"] << (w["trivial"].get<bool>() ? " (trivial)" : "")
                << '\n';
    if (r.contains("phi")) std::cout << "Phi = " << r["phi"]["values"].dump() << '\n';
  });
}

int cmd_delta(int n, const std::string& f_text, int max_m, const CacheOptions& cache_opts, std::size_t inline_limit,
              bool as_json) {
  Report report("delta");
  report.inputs() = {{"n", n}, {"f", f_text}, {"max_m", max_m}};
  const auto f = CochainFn::parse(f_text, Modulus(n));
  DeltaCache cache = cache_opts.make();
  DeltaReach& reach = cache.get(f, max_m);
  const auto dump = cache.file_for(f);
  json levels = json::array();
  for (int m = 0; m <= max_m; ++m) levels.push_back(set_summary(reach.level(m), inline_limit, dump));
  report.results() = {{"f_canonical", f.canonical()},
                      {"im_delta_size", reach.im_delta().size()},
                      {"im_delta", set_summary(reach.im_delta(), inline_limit, dump)},
                      {"levels", levels}};
  if (dump) report.results()["cache_file"] = dump->string();
  report.cache(cache);
  return emit(report, as_json, [&](const json& j) {
    const auto& r = j["results"];
    std::cout << "|Im(delta f)| = " << r["im_delta_size"] << '\n';
    std::cout << "Im(delta f) = " << r["im_delta"].dump() << '\n';
    for (std::size_t m = 0; m < r["levels"].size(); ++m)
      std::cout << "Delta_" << m << " = " << r["levels"][m].dump() << '\n';
  });
}

int cmd_certify(const std::string& path_d, const std::string& path_d2, int n, const std::string& f_text, int s,
                int max_m, const CacheOptions& cache_opts, const std::string& out_path, bool as_json) {
  Report report("certify");
  report.inputs() = {{"D", path_d}, {"D_prime", path_d2}, {"n", n}, {"f", f_text}, {"s", s}, {"max_m", max_m}};
  const Diagram d = parse_diagram(read_file(path_d));
  const Diagram d2 = parse_diagram(read_file(path_d2));
  const auto f = CochainFn::parse(f_text, Modulus(n));
  DeltaCache cache = cache_opts.make();
  const auto cert = certify_lower_bound(d, d2, s, f, max_m, cache);
  report.results() = {{"m", cert.m}, {"certificate", to_json(cert)}};
  report.cache(cache);
  if (!out_path.empty()) std::ofstream(out_path) << to_json(cert).dump(2) << '\n';
  emit(report, as_json, [&](const json&) {
    std::cout << "Omega_3(" << cert.d_name << ", " << cert.d2_name << ") >= " << cert.m << '\n';
    if (cert.degenerate) std::cout << "  no non-trivial coloring on " << cert.d_name << '\n';
    if (cert.coloring_id) {
      std::cout << "  coloring #" << *cert.coloring_id << ", W = " << cert.w << '\n';
      std::cout << "  Phi = " << json(cert.phi).dump() << '\n';
      std::cout << "  W - Phi = " << json(cert.differences).dump() << '\n';
      for (const auto& v : cert.verdicts)
        std::cout << "  Delta_" << v.level << " (" << v.level_size << " elements): "
                  << (v.empty() ? "disjoint" : "meets at " + json(v.hits).dump()) << '\n';
    }
  });
  return cert.m >= 1 ? kOk : kMismatch;
}

int cmd_verify(const std::string& cert_path, const std::string& path_d, const std::string& path_d2, bool as_json) {
  Report report("verify");
  report.inputs() = {{"certificate", cert_path}, {"D", path_d}, {"D_prime", path_d2}};
  const auto cert = certificate_from_json(json::parse(read_file(cert_path)));
  const Diagram d = parse_diagram(read_file(path_d));
  const Diagram d2 = parse_diagram(read_file(path_d2));
  const auto f = CochainFn::parse(cert.f_source, Modulus(cert.n));
  const auto result = verify_certificate(cert, d, d2, f);
  report.results() = {{"accepted", result.ok()}, {"problems", result.problems}, {"m", cert.m}};
  emit(report, as_json, [&](const json&) {
    std::cout << (result.ok() ? "accepted" : "rejected") << ": m = " << cert.m << '\n';
    for (const auto& p : result.problems) std::cout << "  " << p << '\n';
  });
  return result.ok() ? kOk : kMismatch;
}

int cmd_reproduce(const std::string& fixture_dir, const CacheOptions& cache_opts, bool as_json) {
  Report report("reproduce");
  report.inputs() = {{"fixtures", fixture_dir.empty() ? "bundled" : fixture_dir}};
  const auto lib =
      fixture_dir.empty() ? fixtures::FixtureLibrary::bundled() : fixtures::FixtureLibrary::from_directory(fixture_dir);
  DeltaCache cache = cache_opts.make();
  const auto results = run_reproduction(lib, cache);
  json items = json::array();
  bool all_pass = true;
  for (const auto& r : results) {
    items.push_back(to_json(r));
    all_pass = all_pass && r.pass;
  }
  report.results() = {{"all_pass", all_pass}, {"checks", items}};
  report.cache(cache);
  emit(report, as_json, [&](const json&) {
    for (const auto& r : results) {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
      if (!r.pass) std::cout << "\n     expected: " << r.expected << "\n     actual:   " << r.actual;
      std::cout << '\n';
    }
    std::cout << (all_pass ? "all checks passed" : "reproduction mismatch") << '\n';
  });
  return all_pass ? kOk : kMismatch;
}

int cmd_export_fixtures(const std::string& dir) {
  fs::create_directories(dir);
  for (const auto& [key, text] : fixtures::embedded()) std::ofstream(fs::path(dir) / (key + ".json")) << text;
  std::cout << "wrote " << fixtures::embedded().size() << " fixtures to " << dir << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fox colorings, weight invariants and type-III move lower bounds"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit a machine-readable JSON report");

  std::string path, path2, f_text, which = "all", fixture_dir, out_path, cert_path;
  int n = 0;
  int s = 0;
  int max_m = -1;
  bool emit_derived = false;
  bool nontrivial_only = false;
  std::optional<int> outer;
  std::size_t inline_limit = 64;
  CacheOptions cache_opts;

  auto* validate_cmd = app.add_subcommand("validate", "Check a diagram file");
  validate_cmd->add_option("path", path, "Diagram JSON file")->required();
  validate_cmd->add_flag("--emit-derived", emit_derived, "Include arcs, faces, signs and components");
  validate_cmd->add_flag("--json", as_json);

  auto* colorings_cmd = app.add_subcommand("colorings", "List Fox n-colorings in canonical order");
  colorings_cmd->add_option("path", path)->required();
  colorings_cmd->add_option("-n", n, "Modulus")->required();
  colorings_cmd->add_option("-s,--outer-color", outer, "Extend to regions with this outer color");
  colorings_cmd->add_flag("--nontrivial-only", nontrivial_only);
  colorings_cmd->add_flag("--json", as_json);

  auto* weight_cmd = app.add_subcommand("weight", "Weights W_f and the value set Phi_f");
  weight_cmd->add_option("path", path)->required();
  weight_cmd->add_option("-n", n)->required();
  weight_cmd->add_option("-f", f_text, "Polynomial in x, y, z")->required();
  weight_cmd->add_option("-s", s, "Outer region color")->required();
  weight_cmd->add_option("--coloring", which, "Coloring id or 'all'");
  weight_cmd->add_flag("--json", as_json);

  auto* delta_cmd = app.add_subcommand("delta", "Im(delta f) and the levels Delta_0..Delta_M");
  delta_cmd->add_option("-n", n)->required();
  delta_cmd->add_option("-f", f_text)->required();
  delta_cmd->add_option("--max-m", max_m, "Highest level (default 1)");
  delta_cmd->add_option("--inline-limit", inline_limit, "Largest set printed element by element");
  delta_cmd->add_flag("--json", as_json);
  add_cache_options(delta_cmd, cache_opts);

  auto* certify_cmd = app.add_subcommand("certify", "Certify a lower bound on type-III moves between D and D'");
  certify_cmd->add_option("D", path)->required();
  certify_cmd->add_option("D_prime", path2)->required();
  certify_cmd->add_option("-n", n)->required();
  certify_cmd->add_option("-f", f_text)->required();
  certify_cmd->add_option("-s", s)->required();
  certify_cmd->add_option("--max-m", max_m, "Largest bound to try (default 2)");
  certify_cmd->add_option("-o,--out", out_path, "Write the certificate JSON here");
  certify_cmd->add_flag("--json", as_json);
  add_cache_options(certify_cmd, cache_opts);

  auto* verify_cmd = app.add_subcommand("verify", "Re-check a certificate independently");
  verify_cmd->add_option("certificate", cert_path)->required();
  verify_cmd->add_option("D", path)->required();
  verify_cmd->add_option("D_prime", path2)->required();
  verify_cmd->add_flag("--json", as_json);

  auto* reproduce_cmd = app.add_subcommand("reproduce", "Run every reference check on the bundled fixtures");
  reproduce_cmd->add_option("--fixtures", fixture_dir, "Directory with d1.json .. d6.json instead of the bundled set");
  reproduce_cmd->add_flag("--json", as_json);
  add_cache_options(reproduce_cmd, cache_opts);

  auto* export_cmd = app.add_subcommand("export-fixtures", "Write the bundled fixture files");
  export_cmd->add_option("dir", path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(path, emit_derived, as_json);
    if (n < 1 && (*colorings_cmd || *weight_cmd || *delta_cmd || *certify_cmd)) {
      std::cerr << "error: modulus must be at least 1\n";
      return kUsage;
    }
    if (*colorings_cmd) return cmd_colorings(path, n, outer, nontrivial_only, as_json);
    if (*weight_cmd) return cmd_weight(path, n, f_text, s, which, as_json);
    if (*delta_cmd) return cmd_delta(n, f_text, max_m < 0 ? 1 : max_m, cache_opts, inline_limit, as_json);
    if (*certify_cmd)
      return cmd_certify(path, path2, n, f_text, s, max_m < 0 ? 2 : max_m, cache_opts, out_path, as_json);
    if (*verify_cmd) return cmd_verify(cert_path, path, path2, as_json);
    if (*reproduce_cmd) return cmd_reproduce(fixture_dir, cache_opts, as_json);
    if (*export_cmd) return cmd_export_fixtures(path);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}
