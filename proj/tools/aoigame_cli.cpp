// aoigame: solve, simulate, baseline and sweep the two-sensor AoI game.
//
//   aoigame solve    --config game.json --out results/
//   aoigame simulate --config high_cost.json --out results/ --seed 7
//   aoigame baseline --config high_cost.json --out results/
//   aoigame sweep    --config sweep.json --out results/ --runs-per-cell 16
//
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime error.
// Failures print one JSON line on stderr.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "aoigame/cli_io.hpp"

namespace {

int fail(int code, const std::string& kind, const std::string& message, const std::string& key = {}) {
  nlohmann::json err{{"error", kind}, {"message", message}};
  if (!key.empty()) err["key"] = key;
  std::cerr << err.dump() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sensor age-of-information game solver and simulator"};
  app.set_version_flag("--version", std::string(aoigame::kToolVersion));
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> policy;
  std::optional<std::int64_t> runs_per_cell;
  std::string format = "csv";

  for (const char* name : {"solve", "simulate", "baseline", "sweep"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "Override the configured seed");
    sub->add_option("--policy", policy,
                    "Equilibrium selection: mixed_sampling, lexicographic, token_priority, alternating");
    sub->add_option("--runs-per-cell", runs_per_cell, "Sweep runs per (c, alpha) cell");
    sub->add_option("--format", format, "Table output format")->check(CLI::IsMember({"csv", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(1, "usage", e.what());
  }
  const std::string command = app.get_subcommands().front()->get_name();

  aoigame::ResolvedConfig config;
  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) return fail(1, "config", "cannot read " + config_path);
    std::ostringstream text;
    text << in.rdbuf();
    config = aoigame::parse_config(text.str());

    if (seed) config.seed = *seed;
    if (policy) {
      const auto p = aoigame::parse_policy(*policy);
      if (!p) return fail(1, "usage", "unknown policy '" + *policy + "'", "--policy");
      config.policy = *p;
    }
    if (runs_per_cell) {
      if (*runs_per_cell < 1) return fail(1, "usage", "must be at least 1", "--runs-per-cell");
      if (!config.sweep) return fail(1, "usage", "only meaningful for sweep", "--runs-per-cell");
      config.sweep->runs_per_cell = *runs_per_cell;
    }
  } catch (const aoigame::ConfigError& e) {
    return fail(1, "config", e.what(), e.key_path());
  }

  try {
    const auto fmt = format == "json" ? aoigame::OutputFormat::Json : aoigame::OutputFormat::Csv;
    const aoigame::RunManifest m = aoigame::run_command(command, config, out_dir, fmt);
    std::cout << aoigame::to_json(m).dump() << std::endl;
  } catch (const aoigame::ConfigError& e) {
    return fail(1, "config", e.what(), e.key_path());
  } catch (const std::invalid_argument& e) {
    return fail(1, "config", e.what());
  } catch (const std::exception& e) {
    return fail(2, "runtime", e.what());
  }
  return 0;
}
