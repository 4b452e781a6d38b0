#include "aoigame/static_solver.hpp"

#include <algorithm>
#include <cmath>

namespace aoigame {
namespace {

// ln((G+1)/G), accurate for large G.
double token_log_ratio(double tokens) { return std::log1p(1.0 / tokens); }

void require_tokens(const PlayerParams& params) {
  if (!params.can_transmit()) {
    throw UndefinedThreshold("threshold undefined for a player without tokens");
  }
}

// Best-response correspondence as a pair of admissible actions {silent, transmit}.
struct Admissible {
  bool silent;
  bool transmit;
};

Admissible respond(Action other, double aoi, const PlayerParams& params) {
  if (!params.can_transmit()) return {true, false};
  const double theta = threshold(params);
  if (other == Action::Transmit) {
    // u(0,1) - u(1,1) = theta, so transmitting against a transmitter only
    // ties when theta vanishes (c = alpha = 0).
    return {true, std::abs(theta) <= kTieTolerance};
  }
  switch (best_response(Action::Silent, aoi, params)) {
    case BestResponse::Transmit: return {false, true};
    case BestResponse::Silent: return {true, false};
    case BestResponse::Indifferent: break;
  }
  return {true, true};
}

bool admits(const Admissible& a, Action s) { return s == Action::Transmit ? a.transmit : a.silent; }

}  // namespace

double threshold_value(double cost, double incentive_weight, double tokens) {
  return cost + incentive_weight * token_log_ratio(tokens);
}

double threshold(const PlayerParams& params) {
  require_tokens(params);
  return threshold_value(params.cost, params.incentive_weight, static_cast<double>(params.tokens));
}

BestResponse best_response(Action other, double aoi, const PlayerParams& params) {
  if (!params.can_transmit() || other == Action::Transmit) return BestResponse::Silent;
  const double gap = aoi - threshold(params);
  if (std::abs(gap) <= kTieTolerance) return BestResponse::Indifferent;
  return gap > 0 ? BestResponse::Transmit : BestResponse::Silent;
}

bool EquilibriumSet::has_pure(ActionProfile p) const {
  return std::find(pure.begin(), pure.end(), p) != pure.end();
}

std::vector<ActionProfile> pure_nash(const StageGame& game) {
  std::vector<ActionProfile> out;
  for (const ActionProfile p : {kNone, kOnlySecond, kOnlyFirst, kBoth}) {
    if (admits(respond(p.s2, game.aoi, game.player1), p.s1) &&
        admits(respond(p.s1, game.aoi, game.player2), p.s2)) {
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<MixedProfile> mixed_nash(const StageGame& game) {
  if (!game.player1.can_transmit() || !game.player2.can_transmit()) return std::nullopt;
  const double theta1 = threshold(game.player1);
  const double theta2 = threshold(game.player2);
  double slack1 = game.aoi - theta1;
  double slack2 = game.aoi - theta2;
  if (slack1 < -kTieTolerance || slack2 < -kTieTolerance) return std::nullopt;
  slack1 = std::max(slack1, 0.0);
  slack2 = std::max(slack2, 0.0);

  // Player i's indifference fixes the opponent's probability:
  // p_-i = eps_i / (theta_i + eps_i) = eps_i / aoi.
  auto solve = [](double slack, double theta) {
    const double denom = theta + slack;
    return denom > 0.0 ? slack / denom : 0.0;
  };
  MixedProfile m{solve(slack2, theta2), solve(slack1, theta1)};
  const auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in_unit(m.p1) || !in_unit(m.p2)) return std::nullopt;
  return m;
}

EquilibriumSet equilibrium_set(const StageGame& game) {
  return EquilibriumSet{pure_nash(game), mixed_nash(game)};
}

std::pair<double, double> indifference_residual(const StageGame& game, const MixedProfile& profile) {
  auto residual = [&](const PlayerParams& params, double p_other) {
    const double g = static_cast<double>(params.tokens);
    const double log_keep = params.incentive_weight * std::log(g + 1.0);
    const double transmit = -params.cost + params.incentive_weight * std::log(g);
    const double silent = p_other * log_keep + (1.0 - p_other) * (-game.aoi + log_keep);
    return transmit - silent;
  };
  return {residual(game.player1, profile.p2), residual(game.player2, profile.p1)};
}

double printed_mixed_probability(double aoi, const PlayerParams& params) {
  const double theta = threshold(params);
  return (aoi - theta) * (1.0 / theta + 1.0);
}

double critical_cost(double aoi, const PlayerParams& params) {
  require_tokens(params);
  return aoi - params.incentive_weight * token_log_ratio(static_cast<double>(params.tokens));
}

double critical_alpha(double aoi, const PlayerParams& params) {
  require_tokens(params);
  return (aoi - params.cost) / token_log_ratio(static_cast<double>(params.tokens));
}

double critical_tokens(double aoi, const PlayerParams& params) {
  if (!(aoi > params.cost)) {
    throw std::domain_error("no token count makes the threshold reach an aoi at or below the cost");
  }
  if (params.incentive_weight == 0.0) return 0.0;
  return 1.0 / std::expm1((aoi - params.cost) / params.incentive_weight);
}

CriticalValues critical_values(double aoi, const PlayerParams& params) {
  CriticalValues cv;
  cv.c_star = critical_cost(aoi, params);
  cv.alpha_star = critical_alpha(aoi, params);
  if (aoi > params.cost) cv.g_star = critical_tokens(aoi, params);
  return cv;
}

}  // namespace aoigame
