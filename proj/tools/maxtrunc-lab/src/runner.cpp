#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "internal.hpp"

namespace maxtrunc::lab {

namespace {

using Runner = void (*)(Context&);

struct Entry {
  KindInfo info;
  Runner runner;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"ck-verify",
        "Maximal-truncation norm lower bound against the constant times the Hölder bound",
        {{"factor_size", 4, "atoms per domain factor"},
         {"dimension", 2, "number of chained factors (1 or 2)"},
         {"codomain_size", 8, "atoms in the codomain"},
         {"instances", 100, "random kernels and chains"},
         {"p", 2.0, "domain exponent"},
         {"q", 4.0, "codomain exponent, number or \"inf\""},
         {"max_chain_length", 4, "upper bound on sets per chain"},
         {"restarts", 4, "ascent restarts"},
         {"steps", 100, "ascent steps per restart"}}},
       run_ck_verify},
      {{"ck-certificate",
        "Replayed induction certificates with half-mass split checks",
        {{"factor_size", 4, "atoms per domain factor"},
         {"dimension", 2, "number of chained factors (1 or 2)"},
         {"codomain_size", 8, "atoms in the codomain"},
         {"instances", 200, "random (kernel, chains, f) triples"},
         {"p", 2.0, "domain exponent"},
         {"q", 4.0, "codomain exponent, number or \"inf\""},
         {"max_chain_length", 4, "upper bound on sets per chain"},
         {"relative_tolerance", 1e-9, "slack allowed in each recorded inequality"},
         {"emit_certificates", 1, "certificates copied into the report"}}},
       run_ck_certificate},
      {{"mpz-max",
        "Maximal partial Fourier transform over a dyadic radius grid",
        {{"points", 32, "samples per axis of the 2-d signal grid"},
         {"spacing", 0.25, "sample spacing"},
         {"radii_per_axis", 4, "dyadic truncation radii per axis"},
         {"signals", 10, "random band-limited signals"},
         {"p", 4.0 / 3.0, "signal exponent in [1, 2)"},
         {"brute_force", true, "compare the field against direct sums"},
         {"refine", true, "recompute each ratio on the doubled grid"},
         {"refine_tolerance", 0.1, "allowed relative ratio change under refinement"},
         {"heatmap", true, "write an SVG of the first field"}}},
       run_mpz_max},
      {{"mpz-converge",
        "Pointwise error of partial transforms along a radius path",
        {{"points", 64, "samples per axis"},
         {"spacing", 0.125, "sample spacing"},
         {"frequency", json::array({0.3, -0.2}), "evaluation frequency"},
         {"signal", "gaussian", "gaussian or random"},
         {"path", "anisotropic", "anisotropic (t, t^2) or isotropic (t, t)"},
         {"steps", json::array({0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0}), "path parameters t"},
         {"tolerance", 1e-3, "required final error"}}},
       run_mpz_converge},
      {{"fefferman-growth",
        "Growth of rectangular partial sums of the chirp pulse",
        {{"point", json::array({0.8, 0.8}), "evaluation point in [2/3, 1]^2"},
         {"lambdas", json::array({16, 32, 64, 128, 256, 512, 1024, 2048, 4096}), "chirp rates"},
         {"band", 3.0, "max/min bound on |S|/ln(lambda) over the upper half"},
         {"oracle_lambdas", json::array({0.25, 0.5, 1.0}), "rates checked against the Dirichlet convolution"},
         {"oracle_tolerance", 1e-4, "allowed oracle deviation"},
         {"series_terms", json::array(), "indices n of termwise series bounds to report"}}},
       run_fefferman_growth},
      {{"fefferman-flatness",
        "Partial sums at mismatched rates stay flat",
        {{"point", json::array({0.8, 0.8}), "evaluation point in [2/3, 1]^2"},
         {"lambda", 16.0, "chirp rate of the pulse"},
         {"multipliers", json::array({3, 9, 27}), "rate multipliers, each >= 3"},
         {"growth_lambdas", json::array({16, 32, 64, 128, 256, 512, 1024, 2048, 4096}), "rates of the reference growth sweep"},
         {"growth_slope", nullptr, "reference growth slope; computed when null"},
         {"separation", 0.2, "flat slope must stay below this fraction of the growth slope"}}},
       run_fefferman_flatness},
      {{"oscint",
        "Principal-value product-phase integrals: log growth and shifted boundedness",
        {{"lambdas", json::array({1e2, 1e3, 1e4, 1e5}), "frequencies of the centered sweep"},
         {"slope_tolerance", 0.05, "relative tolerance of the slope against 2 pi"},
         {"brute_lambda", 3.0, "frequency of the 2-d brute-force comparison"},
         {"brute_shifts", json::array({json::array({0.0, 0.0}), json::array({0.5, -0.7})}), "shifts compared by brute force"},
         {"brute_tolerance", 1e-6, "allowed brute-force deviation"},
         {"draws", 100, "random shifted phases"},
         {"draw_lambdas", json::array({10, 100, 1000}), "frequencies of each shifted sweep"},
         {"min_shift", 4.0 / 3.0, "lower bound on max(|c1|, |c2|)"},
         {"max_shift", 3.0, "shifts are drawn in [-max_shift, max_shift]^2"},
         {"bounded_fraction", 0.2, "shifted |slope| must stay below this fraction of 2 pi"},
         {"quadrature_tolerance", 1e-10, "absolute tolerance per integral"},
         {"max_subdivisions", 200000, "panel bisections allowed per integral"}}},
       run_oscint},
      {{"restriction-max",
        "Maximal mollified restriction to the parabola and its refinement band",
        {{"points", 32, "samples per axis of the signal grid"},
         {"spacing", 0.25, "sample spacing"},
         {"samples", 201, "parabola samples over u in [-1, 1]"},
         {"dilation_min", -2, "smallest dyadic dilation exponent"},
         {"dilation_max", 1, "largest dyadic dilation exponent"},
         {"signals", 10, "random band-limited signals"},
         {"p", 1.2, "signal exponent"},
         {"q", 2.0, "surface exponent"},
         {"refine", true, "recompute each ratio on the doubled grid"},
         {"band", 3.0, "allowed max/min ratio under refinement"}}},
       run_restriction_max},
      {{"lebesgue-profile",
        "Ellipsoid-average deviations of a Gaussian transform at a parabola point",
        {{"point", json::array({0.3, 0.09}), "frequency point"},
         {"points", 32, "samples per axis of the Gaussian"},
         {"spacing", 0.25, "sample spacing"},
         {"isotropic_steps", json::array({0.2, 0.1, 0.05, 0.025, 0.0125}), "radii t of the (t, t) path"},
         {"anisotropic_steps", json::array({0.4, 0.2, 0.1, 0.05, 0.025}), "parameters t of the (t, t^2) path"},
         {"resolution", 16, "window nodes per radius"},
         {"min_order", 1.0, "required fitted order in max r_j"}}},
       run_lebesgue_profile},
      {{"quadrant-identity",
        "Quadrant expansion residuals of the dilated Gaussian mollifier",
        {{"draws", 100, "random (r, x) draws"},
         {"max_dimension", 2, "dimensions cycle through 1..max_dimension"},
         {"radius_min", 0.1, "log-uniform radius range"},
         {"radius_max", 10.0, "log-uniform radius range"},
         {"coordinate_max", 2.0, "|x_j| drawn in [0.05, coordinate_max] with random sign"},
         {"tolerance", 1e-6, "allowed residual"}}},
       run_quadrant_identity},
  };
  return entries;
}

const Entry& lookup(const std::string& kind) {
  for (const auto& e : registry()) {
    if (e.info.name == kind) return e;
  }
  throw ConfigError("unknown experiment kind '" + kind + "'");
}

bool compatible(const json& def, const json& v, const std::string& name) {
  if (def.is_null()) return v.is_null() || v.is_number();
  if (def.is_number()) return v.is_number() || ((name == "p" || name == "q") && v.is_string());
  if (def.is_boolean()) return v.is_boolean();
  if (def.is_string()) return v.is_string();
  if (def.is_array()) return v.is_array();
  return false;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

}  // namespace

int exit_code(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::ok: return 0;
    case RunStatus::assertion_failure: return 1;
    case RunStatus::config_error: return 2;
    case RunStatus::nonconvergence: return 3;
  }
  return 2;
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::ok: return "ok";
    case RunStatus::assertion_failure: return "assertion_failure";
    case RunStatus::config_error: return "config_error";
    case RunStatus::nonconvergence: return "nonconvergence";
  }
  return "unknown";
}

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw Error("row width does not match header of " + name);
  rows.push_back(std::move(row));
}

std::string CsvTable::render() const {
  std::string s;
  auto line = [&s](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) s += ',';
      s += cells[i];
    }
    s += '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return s;
}

bool RunReport::check(std::string name, double lhs, const std::string& relation, double rhs) {
  bool holds = false;
  if (relation == "<") holds = lhs < rhs;
  else if (relation == "<=") holds = lhs <= rhs;
  else if (relation == ">") holds = lhs > rhs;
  else if (relation == ">=") holds = lhs >= rhs;
  else if (relation == "==") holds = lhs == rhs;
  else throw Error("unknown relation " + relation);
  assertions.push_back({std::move(name), lhs, relation, rhs, holds});
  return holds;
}

bool RunReport::all_hold() const { return failures() == 0; }

std::size_t RunReport::failures() const {
  std::size_t n = 0;
  for (const auto& a : assertions) n += a.holds ? 0 : 1;
  return n;
}

const CsvTable* RunReport::table(const std::string& name) const {
  for (const auto& t : tables) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

json RunReport::to_json() const {
  json checks = json::array();
  for (const auto& a : assertions) {
    checks.push_back({{"name", a.name}, {"lhs", a.lhs}, {"relation", a.relation}, {"rhs", a.rhs}, {"holds", a.holds}});
  }
  json doc = {
      {"config", {{"kind", config.kind}, {"seed", config.seed}, {"threads", config.threads}, {"params", config.params}}},
      {"status", to_string(status)},
      {"results", results},
      {"assertions", checks},
      {"summary", {{"checked", assertions.size()}, {"passed", assertions.size() - failures()}, {"failed", failures()}}},
      {"timings", {{"wall_seconds", seconds}}},
  };
  if (!message.empty()) doc["message"] = message;
  return doc;
}

const std::vector<KindInfo>& kinds() {
  static const std::vector<KindInfo> list = [] {
    std::vector<KindInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return list;
}

json kinds_json() {
  json out = json::array();
  for (const auto& k : kinds()) {
    json params = json::object();
    for (const auto& p : k.params) params[p.name] = {{"default", p.default_value}, {"description", p.description}};
    out.push_back({{"kind", k.name}, {"summary", k.summary}, {"params", params}});
  }
  return out;
}

json resolve_params(const std::string& kind, const json& params) {
  const auto& info = lookup(kind).info;
  if (!params.is_object()) throw ConfigError("params must be an object");
  json out = json::object();
  for (const auto& p : info.params) out[p.name] = p.default_value;
  for (const auto& [name, value] : params.items()) {
    if (!out.contains(name)) throw ConfigError("unknown parameter '" + name + "' for kind " + kind);
    if (!compatible(out[name], value, name)) throw ConfigError("parameter '" + name + "' has the wrong type");
    out[name] = value;
  }
  return out;
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "kind" && key != "seed" && key != "threads" && key != "out" && key != "params") {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  ExperimentConfig cfg;
  if (!doc.contains("kind") || !doc["kind"].is_string()) throw ConfigError("config needs a string 'kind'");
  cfg.kind = doc["kind"].get<std::string>();
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() || doc["seed"].get<long long>() < 0) throw ConfigError("'seed' must be a nonnegative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("threads")) {
    if (!doc["threads"].is_number_integer() || doc["threads"].get<long long>() <= 0) {
      throw ConfigError("'threads' must be a positive integer");
    }
    cfg.threads = doc["threads"].get<std::size_t>();
  }
  if (doc.contains("out")) {
    if (!doc["out"].is_string()) throw ConfigError("'out' must be a string");
    cfg.out = doc["out"].get<std::string>();
  }
  if (doc.contains("params")) cfg.params = doc["params"];
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  try {
    return parse_config(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
}

RunReport run(const ExperimentConfig& config) {
  const Entry& entry = lookup(config.kind);
  if (config.threads == 0) throw ConfigError("'threads' must be positive");
  RunReport report;
  report.config = config;
  report.config.params = resolve_params(config.kind, config.params);
  Context ctx{report.config.params, config.seed, config.threads, report};

  const auto start = std::chrono::steady_clock::now();
  try {
    entry.runner(ctx);
    report.status = report.all_hold() ? RunStatus::ok : RunStatus::assertion_failure;
  } catch (const NonConvergence& e) {
    report.status = RunStatus::nonconvergence;
    report.message = e.what();
    report.results["partial"] = {{"real", e.partial_real()}, {"imag", e.partial_imag()},
                                 {"abs_error_estimate", e.abs_error_estimate()}};
  } catch (const NumericalError& e) {
    report.status = RunStatus::nonconvergence;
    report.message = e.what();
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  } catch (const BudgetExceeded& e) {
    throw ConfigError(e.what());
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<std::string> write_outputs(const RunReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> names;
  for (const auto& t : report.tables) {
    names.push_back(t.name + ".csv");
    write_file(dir / names.back(), t.render());
  }
  for (const auto& p : report.plots) {
    names.push_back(p.name + ".svg");
    write_file(dir / names.back(), p.content);
  }
  json doc = report.to_json();
  doc["outputs"] = names;
  names.push_back("report.json");
  write_file(dir / "report.json", doc.dump(2) + "\n");
  return names;
}

int run_to_directory(const ExperimentConfig& config, std::ostream& log) {
  RunReport report;
  try {
    report = run(config);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return exit_code(RunStatus::config_error);
  }
  write_outputs(report, config.out);
  log << config.kind << ": " << to_string(report.status) << ", " << report.assertions.size() - report.failures()
      << "/" << report.assertions.size() << " assertions hold, " << report.seconds << " s\n";
  if (!report.message.empty()) log << report.message << '\n';
  for (const auto& a : report.assertions) {
    if (!a.holds) log << "FAILED " << a.name << ": " << a.lhs << ' ' << a.relation << ' ' << a.rhs << '\n';
  }
  return exit_code(report.status);
}

}  // namespace maxtrunc::lab
