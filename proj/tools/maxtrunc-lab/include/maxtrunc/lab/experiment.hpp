#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "maxtrunc/errors.hpp"

namespace maxtrunc::lab {

using json = nlohmann::json;

/// Malformed configuration or parameters outside a module's preconditions.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct ExperimentConfig {
  std::string kind;
  json params = json::object();
  std::uint64_t seed = 0;
  std::filesystem::path out = "out";
  std::size_t threads = 1;
};

/// Reads {"kind", "seed", "threads", "out", "params"} from a JSON document.
ExperimentConfig parse_config(const json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// One checked relation lhs <relation> rhs.
struct Assertion {
  std::string name;
  double lhs = 0.0;
  std::string relation;
  double rhs = 0.0;
  bool holds = false;
};

/// CSV contract: a header row, then one row per item.
struct CsvTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
  std::string render() const;
};

struct SvgPlot {
  std::string name;
  std::string content;
};

enum class RunStatus { ok, assertion_failure, config_error, nonconvergence };

int exit_code(RunStatus status) noexcept;
std::string to_string(RunStatus status);

struct RunReport {
  ExperimentConfig config;  ///< params hold the resolved values, defaults included
  json results = json::object();
  std::vector<Assertion> assertions;
  std::vector<CsvTable> tables;
  std::vector<SvgPlot> plots;
  double seconds = 0.0;
  RunStatus status = RunStatus::ok;
  std::string message;

  /// Records lhs <relation> rhs for relation in {"<", "<=", ">", ">=", "=="}.
  bool check(std::string name, double lhs, const std::string& relation, double rhs);
  bool all_hold() const;
  std::size_t failures() const;
  const CsvTable* table(const std::string& name) const;
  json to_json() const;
};

struct ParamSpec {
  std::string name;
  json default_value;
  std::string description;
};

struct KindInfo {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;
};

/// Registered experiment kinds in listing order.
const std::vector<KindInfo>& kinds();
json kinds_json();

/// Defaults merged with the given params. Unknown names or mismatched types
/// throw ConfigError.
json resolve_params(const std::string& kind, const json& params);

/// Executes the experiment in memory. Invalid configs throw ConfigError
/// before any work; non-convergence returns a partial report.
RunReport run(const ExperimentConfig& config);

/// Writes every table, plot and report.json under dir; returns the file names.
std::vector<std::string> write_outputs(const RunReport& report, const std::filesystem::path& dir);

/// run + write_outputs with CLI exit-code semantics. Config errors write nothing.
int run_to_directory(const ExperimentConfig& config, std::ostream& log);

}  // namespace maxtrunc::lab
