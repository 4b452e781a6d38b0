#include "aoigame/repeated_game.hpp"

#include <stdexcept>

namespace aoigame {

std::string_view to_string(SelectionPolicy p) {
  switch (p) {
    case SelectionPolicy::MixedSampling: return "mixed_sampling";
    case SelectionPolicy::Lexicographic: return "lexicographic";
    case SelectionPolicy::TokenPriority: return "token_priority";
    case SelectionPolicy::Alternating: return "alternating";
  }
  return "unknown";
}

std::optional<SelectionPolicy> parse_policy(std::string_view name) {
  for (auto p : {SelectionPolicy::MixedSampling, SelectionPolicy::Lexicographic,
                 SelectionPolicy::TokenPriority, SelectionPolicy::Alternating}) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

std::string_view to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::NoTransmit: return "no_transmit";
    case EquilibriumKind::PureUnique: return "pure_unique";
    case EquilibriumKind::PureSelected: return "pure_selected";
    case EquilibriumKind::MixedSampled: return "mixed_sampled";
  }
  return "unknown";
}

void validate(const SimConfig& config) {
  if (config.horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  validate(config.player1);
  validate(config.player2);
}

SimState SimState::initial(const SimConfig& config) {
  return SimState{0, 0, config.player1.tokens, config.player2.tokens, 0};
}

namespace {

Selection sample_mixed(const MixedProfile& m, Rng& rng) {
  // Player 1 draws first; the order is part of the reproducibility contract.
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  return {{action_from_int(u1 < m.p1), action_from_int(u2 < m.p2)}, EquilibriumKind::MixedSampled};
}

bool is_contested(const EquilibriumSet& eqs) {
  return eqs.pure.size() > 1 && !eqs.has_pure(kNone);
}

}  // namespace

Selection select_profile(const EquilibriumSet& eqs, const SimState& state, SelectionPolicy policy,
                         Rng& rng) {
  if (eqs.pure.size() == 1) {
    const ActionProfile p = eqs.pure.front();
    return {p, p == kNone ? EquilibriumKind::NoTransmit : EquilibriumKind::PureUnique};
  }
  if (eqs.pure.empty()) {
    if (eqs.mixed) return sample_mixed(*eqs.mixed, rng);
    return {kNone, EquilibriumKind::NoTransmit};
  }
  // A tie at a threshold keeps silence available; integer slots only cross
  // once the AoI is strictly above the threshold.
  if (eqs.has_pure(kNone)) return {kNone, EquilibriumKind::NoTransmit};

  const Selection first{kOnlyFirst, EquilibriumKind::PureSelected};
  const Selection second{kOnlySecond, EquilibriumKind::PureSelected};
  switch (policy) {
    case SelectionPolicy::Lexicographic:
      return first;
    case SelectionPolicy::Alternating:
      return state.contested_slots % 2 == 0 ? first : second;
    case SelectionPolicy::TokenPriority:
      if (state.tokens1 > state.tokens2) return first;
      if (state.tokens2 > state.tokens1) return second;
      [[fallthrough]];
    case SelectionPolicy::MixedSampling:
      if (eqs.mixed) return sample_mixed(*eqs.mixed, rng);
      return first;
  }
  return first;
}

StageGame stage_game(const SimState& state, const SimConfig& config) {
  StageGame g;
  g.aoi = static_cast<double>(state.aoi);
  g.player1 = config.player1;
  g.player2 = config.player2;
  g.player1.tokens = state.tokens1;
  g.player2.tokens = state.tokens2;
  return g;
}

std::pair<SimState, TraceEvent> step(const SimState& state, const SimConfig& config, Rng& rng) {
  const EquilibriumSet eqs = equilibrium_set(stage_game(state, config));
  const Selection sel = select_profile(eqs, state, config.policy, rng);

  SimState next = state;
  if (sel.profile.s1 == Action::Transmit) --next.tokens1;
  if (sel.profile.s2 == Action::Transmit) --next.tokens2;
  if (is_contested(eqs)) ++next.contested_slots;
  const bool sent = sel.profile != kNone;
  next.aoi = sent ? 0 : state.aoi + 1;
  next.slot = state.slot + 1;

  TraceEvent ev;
  ev.slot = state.slot;
  ev.aoi_before = state.aoi;
  ev.action1 = sel.profile.s1;
  ev.action2 = sel.profile.s2;
  ev.kind = sel.kind;
  ev.tokens1_after = next.tokens1;
  ev.tokens2_after = next.tokens2;
  return {next, ev};
}

SimTrace simulate(const SimConfig& config) {
  validate(config);
  SimTrace trace;
  trace.config = config;
  trace.events.reserve(static_cast<std::size_t>(config.horizon));
  trace.aoi_series.reserve(static_cast<std::size_t>(config.horizon) + 1);

  Rng rng(config.seed);
  SimState state = SimState::initial(config);
  trace.aoi_series.push_back(state.aoi);
  const bool had_tokens = !state.exhausted();
  while (state.slot < config.horizon) {
    auto [next, ev] = step(state, config, rng);
    trace.events.push_back(ev);
    trace.aoi_series.push_back(next.aoi);
    state = next;
    if (config.stop_when_exhausted && had_tokens && state.exhausted()) break;
  }
  return trace;
}

std::int64_t SimTrace::transmissions(int player) const {
  std::int64_t n = 0;
  for (const auto& e : events) {
    n += as_int(player == 0 ? e.action1 : e.action2);
  }
  return n;
}

std::int64_t SimTrace::collisions() const {
  std::int64_t n = 0;
  for (const auto& e : events) n += e.collision();
  return n;
}

std::vector<std::int64_t> SimTrace::update_slots() const {
  std::vector<std::int64_t> out;
  for (const auto& e : events) {
    if (e.any_transmit()) out.push_back(e.slot);
  }
  return out;
}

}  // namespace aoigame
