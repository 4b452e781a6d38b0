#include "aoigame/cli_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "aoigame/baseline_optimal.hpp"

namespace aoigame {

using nlohmann::json;

ConfigError::ConfigError(std::string key_path, const std::string& message)
    : std::runtime_error(key_path.empty() ? message : key_path + ": " + message),
      key_path_(std::move(key_path)) {}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round_significant(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string index(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

double read_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
  return x;
}

double read_non_negative(const json& v, const std::string& path) {
  const double x = read_number(v, path);
  if (x < 0.0) throw ConfigError(path, "must be non-negative");
  return x;
}

std::int64_t read_integer(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) {
    if (v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      throw ConfigError(path, "integer out of range");
    }
    return static_cast<std::int64_t>(v.get<std::uint64_t>());
  }
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15) {
      return static_cast<std::int64_t>(x);
    }
  }
  throw ConfigError(path, "expected an integer");
}

std::int64_t read_non_negative_integer(const json& v, const std::string& path) {
  const std::int64_t x = read_integer(v, path);
  if (x < 0) throw ConfigError(path, "must be a non-negative integer");
  return x;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(join(path, key), "unknown key");
  }
}

PlayerParams read_player(const json& obj, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object with c, alpha, g");
  reject_unknown(obj, {"c", "alpha", "g"}, path);
  for (const char* key : {"c", "alpha", "g"}) {
    if (!obj.contains(key)) throw ConfigError(join(path, key), "missing");
  }
  PlayerParams p;
  p.cost = read_non_negative(obj.at("c"), join(path, "c"));
  p.incentive_weight = read_non_negative(obj.at("alpha"), join(path, "alpha"));
  p.tokens = read_non_negative_integer(obj.at("g"), join(path, "g"));
  return p;
}

// Shorthand: "c": 100 or "c": [100, 120] at the top level.
template <typename Read>
auto read_pair(const json& doc, const char* key, Read read) {
  const json& v = doc.at(key);
  if (v.is_array()) {
    if (v.size() != 2) throw ConfigError(key, "expected one value or a pair");
    return std::make_pair(read(v[0], index(key, 0)), read(v[1], index(key, 1)));
  }
  const auto x = read(v, key);
  return std::make_pair(x, x);
}

std::vector<double> read_axis(const json& v, const std::string& path) {
  std::vector<double> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_number(v[i], index(path, i)));
  } else if (v.is_object()) {
    reject_unknown(v, {"from", "to", "count"}, path);
    for (const char* key : {"from", "to", "count"}) {
      if (!v.contains(key)) throw ConfigError(join(path, key), "missing");
    }
    const double from = read_number(v.at("from"), join(path, "from"));
    const double to = read_number(v.at("to"), join(path, "to"));
    const std::int64_t count = read_integer(v.at("count"), join(path, "count"));
    if (count < 1) throw ConfigError(join(path, "count"), "must be at least 1");
    out = linspace(from, to, static_cast<std::size_t>(count));
  } else {
    throw ConfigError(path, "expected a list of values or {from, to, count}");
  }
  if (out.empty()) throw ConfigError(path, "axis is empty");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(out[i] > 0.0)) throw ConfigError(index(path, i), "axis values must be > 0");
    if (i > 0 && !(out[i] > out[i - 1])) throw ConfigError(index(path, i), "axis must be strictly ascending");
  }
  return out;
}

}  // namespace

ResolvedConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

ResolvedConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "configuration must be a JSON object");
  reject_unknown(doc,
                 {"horizon", "players", "c", "alpha", "g", "policy", "seed", "stop_when_exhausted", "aoi",
                  "budget", "sweep"},
                 "");
  ResolvedConfig cfg;

  if (doc.contains("horizon")) {
    const std::int64_t h = read_integer(doc.at("horizon"), "horizon");
    if (h < 1) throw ConfigError("horizon", "must be at least 1");
    cfg.horizon = h;
  }

  const bool shorthand = doc.contains("c") || doc.contains("alpha") || doc.contains("g");
  if (doc.contains("players") && shorthand) {
    throw ConfigError("players", "give either players or top-level c/alpha/g, not both");
  }
  if (doc.contains("players")) {
    const json& players = doc.at("players");
    if (!players.is_array() || players.size() != 2) {
      throw ConfigError("players", "expected a list of exactly two players");
    }
    cfg.player1 = read_player(players[0], "players[0]");
    cfg.player2 = read_player(players[1], "players[1]");
  } else if (shorthand) {
    for (const char* key : {"c", "alpha", "g"}) {
      if (!doc.contains(key)) throw ConfigError(key, "missing");
    }
    std::tie(cfg.player1.cost, cfg.player2.cost) = read_pair(doc, "c", read_non_negative);
    std::tie(cfg.player1.incentive_weight, cfg.player2.incentive_weight) =
        read_pair(doc, "alpha", read_non_negative);
    std::tie(cfg.player1.tokens, cfg.player2.tokens) = read_pair(doc, "g", read_non_negative_integer);
  } else {
    throw ConfigError("players", "missing");
  }

  if (doc.contains("policy")) {
    const json& v = doc.at("policy");
    if (!v.is_string()) throw ConfigError("policy", "expected a string");
    const auto p = parse_policy(v.get<std::string>());
    if (!p) throw ConfigError("policy", "unknown policy '" + v.get<std::string>() + "'");
    cfg.policy = *p;
  }
  if (doc.contains("seed")) {
    const json& v = doc.at("seed");
    if (v.is_number_unsigned()) {
      cfg.seed = v.get<std::uint64_t>();
    } else {
      cfg.seed = static_cast<std::uint64_t>(read_non_negative_integer(v, "seed"));
    }
  }
  if (doc.contains("stop_when_exhausted")) {
    const json& v = doc.at("stop_when_exhausted");
    if (!v.is_boolean()) throw ConfigError("stop_when_exhausted", "expected true or false");
    cfg.stop_when_exhausted = v.get<bool>();
  }
  if (doc.contains("aoi")) cfg.aoi = read_non_negative(doc.at("aoi"), "aoi");
  if (doc.contains("budget")) cfg.budget = read_non_negative_integer(doc.at("budget"), "budget");

  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    if (!s.is_object()) throw ConfigError("sweep", "expected an object");
    reject_unknown(s, {"c", "alpha", "runs_per_cell"}, "sweep");
    for (const char* key : {"c", "alpha"}) {
      if (!s.contains(key)) throw ConfigError(join("sweep", key), "missing");
    }
    SweepAxes axes;
    axes.c_values = read_axis(s.at("c"), "sweep.c");
    axes.alpha_values = read_axis(s.at("alpha"), "sweep.alpha");
    if (s.contains("runs_per_cell")) {
      axes.runs_per_cell = read_integer(s.at("runs_per_cell"), "sweep.runs_per_cell");
      if (axes.runs_per_cell < 1) throw ConfigError("sweep.runs_per_cell", "must be at least 1");
    }
    cfg.sweep = std::move(axes);
  }
  return cfg;
}

SimConfig ResolvedConfig::sim_config() const {
  if (!horizon) throw ConfigError("horizon", "required for this command");
  SimConfig c;
  c.horizon = *horizon;
  c.player1 = player1;
  c.player2 = player2;
  c.policy = policy;
  c.seed = seed;
  c.stop_when_exhausted = stop_when_exhausted;
  return c;
}

StageGame ResolvedConfig::stage_game() const {
  if (!aoi) throw ConfigError("aoi", "required for this command");
  return StageGame{*aoi, player1, player2};
}

SweepSpec ResolvedConfig::sweep_spec() const {
  if (!sweep) throw ConfigError("sweep", "required for this command");
  SweepSpec spec;
  spec.sim_template = sim_config();
  spec.c_values = sweep->c_values;
  spec.alpha_values = sweep->alpha_values;
  spec.runs_per_cell = sweep->runs_per_cell;
  spec.base_seed = seed;
  return spec;
}

// ---------------------------------------------------------------------------
// Canonical form and digest

namespace {

json rounded(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(round_significant(x));
  return out;
}

json player_json(const PlayerParams& p) {
  return {{"c", round_significant(p.cost)},
          {"alpha", round_significant(p.incentive_weight)},
          {"g", p.tokens}};
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

json to_json(const ResolvedConfig& c) {
  json doc;
  if (c.horizon) doc["horizon"] = *c.horizon;
  doc["players"] = json::array({player_json(c.player1), player_json(c.player2)});
  doc["policy"] = std::string(to_string(c.policy));
  doc["seed"] = c.seed;
  doc["stop_when_exhausted"] = c.stop_when_exhausted;
  if (c.aoi) doc["aoi"] = round_significant(*c.aoi);
  if (c.budget) doc["budget"] = *c.budget;
  if (c.sweep) {
    doc["sweep"] = {{"c", rounded(c.sweep->c_values)},
                    {"alpha", rounded(c.sweep->alpha_values)},
                    {"runs_per_cell", c.sweep->runs_per_cell}};
  }
  return doc;
}

std::string config_digest(const ResolvedConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a64(to_json(config).dump()));
  return buf;
}

// ---------------------------------------------------------------------------
// Emitters

std::string trace_csv(const SimTrace& trace) {
  std::ostringstream out;
  out << "slot,aoi_before,action1,action2,tokens1_after,tokens2_after,equilibrium_kind\n";
  for (const TraceEvent& e : trace.events) {
    out << e.slot << ',' << e.aoi_before << ',' << as_int(e.action1) << ',' << as_int(e.action2) << ','
        << e.tokens1_after << ',' << e.tokens2_after << ',' << to_string(e.kind) << '\n';
  }
  return out.str();
}

json trace_json(const SimTrace& trace) {
  json events = json::array();
  for (const TraceEvent& e : trace.events) {
    events.push_back({{"slot", e.slot},
                      {"aoi_before", e.aoi_before},
                      {"action1", as_int(e.action1)},
                      {"action2", as_int(e.action2)},
                      {"tokens1_after", e.tokens1_after},
                      {"tokens2_after", e.tokens2_after},
                      {"equilibrium_kind", std::string(to_string(e.kind))}});
  }
  return {{"events", events}, {"aoi_series", trace.aoi_series}};
}

json trace_summary(const SimTrace& trace) {
  const auto slots = trace.update_slots();
  json gaps = nullptr;
  if (slots.size() >= 2) {
    gaps = round_significant(static_cast<double>(slots.back() - slots.front()) /
                             static_cast<double>(slots.size() - 1));
  }
  const auto& last = trace.events.back();
  return {{"horizon", trace.horizon()},
          {"average_aoi", round_significant(average_aoi(trace))},
          {"transmissions", {trace.transmissions(0), trace.transmissions(1)}},
          {"collisions", trace.collisions()},
          {"updates", static_cast<std::int64_t>(slots.size())},
          {"mean_update_gap", gaps},
          {"tokens_left", {last.tokens1_after, last.tokens2_after}},
          {"policy", std::string(to_string(trace.config.policy))},
          {"seed", trace.config.seed}};
}

std::string grid_csv(const PoduGrid& grid) {
  std::ostringstream out;
  out << "c,alpha,podu,runs\n";
  for (std::size_t r = 0; r < grid.alpha_values.size(); ++r) {
    for (std::size_t col = 0; col < grid.c_values.size(); ++col) {
      out << format_number(grid.c_values[col]) << ',' << format_number(grid.alpha_values[r]) << ','
          << format_number(grid.at(r, col)) << ',' << grid.runs_per_cell << '\n';
    }
  }
  return out.str();
}

json grid_json(const PoduGrid& grid) {
  json rows = json::array();
  for (std::size_t r = 0; r < grid.alpha_values.size(); ++r) {
    json row = json::array();
    for (std::size_t col = 0; col < grid.c_values.size(); ++col) row.push_back(round_significant(grid.at(r, col)));
    rows.push_back(row);
  }
  return {{"c", rounded(grid.c_values)},
          {"alpha", rounded(grid.alpha_values)},
          {"podu", rows},
          {"runs_per_cell", grid.runs_per_cell}};
}

json grid_summary(const PoduGrid& grid) {
  const auto [row, col] = grid.argmax();
  return {{"cells", grid.podu.size()},
          {"runs_per_cell", grid.runs_per_cell},
          {"base_seed", grid.base_seed},
          {"min", round_significant(grid.min())},
          {"max", round_significant(grid.max())},
          {"fraction_below_1_1", round_significant(grid.fraction_below(1.1))},
          {"argmax", {{"c", round_significant(grid.c_values[col])},
                      {"alpha", round_significant(grid.alpha_values[row])}}}};
}

json solve_report(const StageGame& game) {
  json players = json::array();
  for (int i = 0; i < 2; ++i) {
    const PlayerParams& p = game.player(i);
    json entry = player_json(p);
    if (p.can_transmit()) {
      const CriticalValues cv = critical_values(game.aoi, p);
      entry["threshold"] = round_significant(threshold(p));
      entry["critical"] = {{"c_star", round_significant(cv.c_star)},
                           {"alpha_star", round_significant(cv.alpha_star)},
                           {"g_star", cv.g_star ? json(round_significant(*cv.g_star)) : json(nullptr)}};
    } else {
      entry["threshold"] = nullptr;
      entry["critical"] = nullptr;
    }
    const BestResponse br = best_response(Action::Silent, game.aoi, p);
    entry["best_response_to_silent"] = br == BestResponse::Transmit ? "transmit"
                                       : br == BestResponse::Silent ? "silent"
                                                                    : "indifferent";
    players.push_back(entry);
  }

  const EquilibriumSet eqs = equilibrium_set(game);
  json pure = json::array();
  for (const ActionProfile& p : eqs.pure) pure.push_back({as_int(p.s1), as_int(p.s2)});
  json mixed = nullptr;
  if (eqs.mixed) {
    const auto [r1, r2] = indifference_residual(game, *eqs.mixed);
    mixed = {{"p1", round_significant(eqs.mixed->p1)},
             {"p2", round_significant(eqs.mixed->p2)},
             {"residual", {round_significant(r1), round_significant(r2)}},
             {"printed_form", {round_significant(printed_mixed_probability(game.aoi, game.player2)),
                               round_significant(printed_mixed_probability(game.aoi, game.player1))}}};
  }
  return {{"aoi", round_significant(game.aoi)}, {"players", players}, {"pure_nash", pure}, {"mixed_nash", mixed}};
}

json baseline_report(std::int64_t horizon, std::int64_t budget) {
  const Schedule s = optimal_schedule(horizon, budget);
  return {{"horizon", horizon},
          {"budget", budget},
          {"update_slots", s.update_slots},
          {"average_aoi", round_significant(schedule_average_aoi(s))}};
}

json to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"config_digest", m.config_digest},
          {"seed", m.seed},
          {"tool_version", m.tool_version},
          {"outputs", m.outputs}};
}

// ---------------------------------------------------------------------------
// Commands

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

RunManifest run_command(std::string_view name, const ResolvedConfig& config,
                        const std::filesystem::path& out_dir, OutputFormat format) {
  RunManifest m;
  m.command = std::string(name);
  m.config_digest = config_digest(config);
  m.seed = config.seed;

  std::vector<std::pair<std::string, std::string>> files;
  const bool csv = format == OutputFormat::Csv;
  if (name == "solve") {
    json report = solve_report(config.stage_game());
    report["config_digest"] = m.config_digest;
    files.emplace_back("solve.json", pretty(report));
  } else if (name == "simulate") {
    const SimTrace trace = simulate(config.sim_config());
    files.emplace_back(csv ? "trace.csv" : "trace.json", csv ? trace_csv(trace) : pretty(trace_json(trace)));
    json summary = trace_summary(trace);
    summary["config_digest"] = m.config_digest;
    files.emplace_back("summary.json", pretty(summary));
  } else if (name == "baseline") {
    const std::int64_t horizon = config.sim_config().horizon;
    json report = baseline_report(horizon, config.pooled_budget());
    report["config_digest"] = m.config_digest;
    files.emplace_back("baseline.json", pretty(report));
  } else if (name == "sweep") {
    const PoduGrid grid = sweep_podu(config.sweep_spec());
    files.emplace_back(csv ? "grid.csv" : "grid.json", csv ? grid_csv(grid) : pretty(grid_json(grid)));
    json summary = grid_summary(grid);
    summary["config_digest"] = m.config_digest;
    files.emplace_back("summary.json", pretty(summary));
  } else {
    throw ConfigError("command", "unknown command '" + std::string(name) + "'");
  }

  std::filesystem::create_directories(out_dir);
  for (const auto& [file, contents] : files) {
    const auto path = out_dir / file;
    write_file(path, contents);
    m.outputs.push_back(path.string());
  }
  const auto manifest_path = out_dir / "manifest.json";
  m.outputs.push_back(manifest_path.string());
  write_file(manifest_path, pretty(to_json(m)));
  return m;
}

}  // namespace aoigame
