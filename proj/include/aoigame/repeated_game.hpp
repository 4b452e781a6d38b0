#ifndef AOIGAME_REPEATED_GAME_HPP
#define AOIGAME_REPEATED_GAME_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aoigame/game_core.hpp"
#include "aoigame/static_solver.hpp"

namespace aoigame {

// How a profile is chosen when the stage game has several equilibria.
enum class SelectionPolicy { MixedSampling, Lexicographic, TokenPriority, Alternating };

std::string_view to_string(SelectionPolicy p);
std::optional<SelectionPolicy> parse_policy(std::string_view name);

// Seeded uniform source. mt19937_64 output is fixed by the standard; the
// conversion to [0,1) is done here so streams match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct SimConfig {
  std::int64_t horizon = 1;  // T, in slots
  PlayerParams player1;
  PlayerParams player2;
  SelectionPolicy policy = SelectionPolicy::MixedSampling;
  std::uint64_t seed = 0;
  // When set, the run ends after the slot in which the last token is spent;
  // horizon then acts as a cap.
  bool stop_when_exhausted = false;
};

void validate(const SimConfig& config);

struct SimState {
  std::int64_t slot = 0;
  std::int64_t aoi = 0;
  std::int64_t tokens1 = 0;
  std::int64_t tokens2 = 0;
  std::int64_t contested_slots = 0;  // prior slots with both single-transmitter NEs

  static SimState initial(const SimConfig& config);
  bool exhausted() const { return tokens1 == 0 && tokens2 == 0; }
};

enum class EquilibriumKind { NoTransmit, PureUnique, PureSelected, MixedSampled };

std::string_view to_string(EquilibriumKind k);

struct Selection {
  ActionProfile profile;
  EquilibriumKind kind = EquilibriumKind::NoTransmit;
};

Selection select_profile(const EquilibriumSet& eqs, const SimState& state, SelectionPolicy policy,
                         Rng& rng);

struct TraceEvent {
  std::int64_t slot = 0;
  std::int64_t aoi_before = 0;
  Action action1 = Action::Silent;
  Action action2 = Action::Silent;
  EquilibriumKind kind = EquilibriumKind::NoTransmit;
  std::int64_t tokens1_after = 0;
  std::int64_t tokens2_after = 0;

  bool any_transmit() const { return action1 == Action::Transmit || action2 == Action::Transmit; }
  bool collision() const { return action1 == Action::Transmit && action2 == Action::Transmit; }
};

StageGame stage_game(const SimState& state, const SimConfig& config);

std::pair<SimState, TraceEvent> step(const SimState& state, const SimConfig& config, Rng& rng);

struct SimTrace {
  SimConfig config;
  std::vector<TraceEvent> events;        // one per slot
  std::vector<std::int64_t> aoi_series;  // delta(0..T)

  std::int64_t horizon() const { return static_cast<std::int64_t>(events.size()); }
  std::int64_t transmissions(int player) const;
  std::int64_t collisions() const;
  std::vector<std::int64_t> update_slots() const;
};

SimTrace simulate(const SimConfig& config);

}  // namespace aoigame

#endif  // AOIGAME_REPEATED_GAME_HPP
