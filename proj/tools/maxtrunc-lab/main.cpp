#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "maxtrunc/lab/experiment.hpp"

namespace lab = maxtrunc::lab;

int main(int argc, char** argv) {
  CLI::App app{"maxtrunc-lab: maximal truncation experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one experiment from a JSON config");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> kind;
  std::optional<std::size_t> threads;
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out, "Override the output directory");
  run->add_option("--kind", kind, "Override the experiment kind");
  run->add_option("--threads", threads, "Worker threads (1 = serial, byte-identical)");

  auto* list = app.add_subcommand("list", "List experiment kinds and their parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list->parsed()) {
    std::cout << lab::kinds_json().dump(2) << '\n';
    return 0;
  }

  lab::ExperimentConfig cfg;
  try {
    cfg = lab::load_config(config_path);
  } catch (const lab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  if (seed) cfg.seed = *seed;
  if (out) cfg.out = *out;
  if (kind) cfg.kind = *kind;
  if (threads) cfg.threads = *threads;
  return lab::run_to_directory(cfg, std::cerr);
}
