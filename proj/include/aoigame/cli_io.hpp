#ifndef AOIGAME_CLI_IO_HPP
#define AOIGAME_CLI_IO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aoigame/metrics_sweep.hpp"
#include "aoigame/repeated_game.hpp"
#include "aoigame/static_solver.hpp"

namespace aoigame {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Invalid configuration; key_path locates the offending entry ("players[1].g").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key_path, const std::string& message);
  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

struct SweepAxes {
  std::vector<double> c_values;
  std::vector<double> alpha_values;
  std::int64_t runs_per_cell = 16;
};

// Everything a command may need, with defaults applied.
struct ResolvedConfig {
  std::optional<std::int64_t> horizon;
  PlayerParams player1;
  PlayerParams player2;
  SelectionPolicy policy = SelectionPolicy::MixedSampling;
  std::uint64_t seed = 0;
  bool stop_when_exhausted = false;
  std::optional<double> aoi;             // solve
  std::optional<std::int64_t> budget;    // baseline; defaults to G1 + G2
  std::optional<SweepAxes> sweep;

  SimConfig sim_config() const;      // requires horizon
  StageGame stage_game() const;      // requires aoi
  SweepSpec sweep_spec() const;      // requires horizon and sweep
  std::int64_t pooled_budget() const { return budget.value_or(player1.tokens + player2.tokens); }
};

ResolvedConfig parse_config(std::string_view text);
ResolvedConfig parse_config(const nlohmann::json& doc);
inline ResolvedConfig parse_config(const std::string& text) { return parse_config(std::string_view(text)); }
inline ResolvedConfig parse_config(const char* text) { return parse_config(std::string_view(text)); }

// Canonical resolved form; parse_config(to_json(c)) yields the same digest.
nlohmann::json to_json(const ResolvedConfig& config);
std::string config_digest(const ResolvedConfig& config);

// 12 significant digits.
std::string format_number(double v);
double round_significant(double v);

std::string trace_csv(const SimTrace& trace);
nlohmann::json trace_json(const SimTrace& trace);
nlohmann::json trace_summary(const SimTrace& trace);

std::string grid_csv(const PoduGrid& grid);
nlohmann::json grid_json(const PoduGrid& grid);
nlohmann::json grid_summary(const PoduGrid& grid);

nlohmann::json solve_report(const StageGame& game);
nlohmann::json baseline_report(std::int64_t horizon, std::int64_t budget);

enum class OutputFormat { Csv, Json };

struct RunManifest {
  std::string command;
  std::string config_digest;
  std::uint64_t seed = 0;
  std::string tool_version{kToolVersion};
  std::vector<std::string> outputs;
};

nlohmann::json to_json(const RunManifest& m);

// Runs solve | simulate | baseline | sweep and writes its outputs plus
// manifest.json into out_dir. Throws ConfigError for unknown commands or
// missing configuration.
RunManifest run_command(std::string_view name, const ResolvedConfig& config,
                        const std::filesystem::path& out_dir, OutputFormat format = OutputFormat::Csv);

}  // namespace aoigame

#endif  // AOIGAME_CLI_IO_HPP
