#include "aoigame/game_core.hpp"

#include <cmath>

namespace aoigame {

void validate(const PlayerParams& p) {
  if (!(p.cost >= 0.0) || !std::isfinite(p.cost)) {
    throw std::invalid_argument("cost must be a finite non-negative number");
  }
  if (!(p.incentive_weight >= 0.0) || !std::isfinite(p.incentive_weight)) {
    throw std::invalid_argument("incentive_weight must be a finite non-negative number");
  }
  if (p.tokens < 0) {
    throw std::invalid_argument("tokens must be non-negative");
  }
}

std::string ActionProfile::to_string() const {
  return "(" + std::to_string(as_int(s1)) + "," + std::to_string(as_int(s2)) + ")";
}

double utility(Action own, Action other, double aoi, const PlayerParams& params) {
  const int si = as_int(own);
  const int so = as_int(other);
  if (si == 1 && !params.can_transmit()) {
    throw InfeasibleAction("transmit requires at least one token");
  }
  const double g = static_cast<double>(params.tokens);
  return -aoi * (1 - si) * (1 - so) - params.cost * si +
         params.incentive_weight * std::log(1.0 + g - si);
}

PayoffBimatrix payoff_bimatrix(const StageGame& game) {
  PayoffBimatrix m;
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      const Action a1 = action_from_int(s1);
      const Action a2 = action_from_int(s2);
      const bool ok1 = s1 == 0 || game.player1.can_transmit();
      const bool ok2 = s2 == 0 || game.player2.can_transmit();
      PayoffCell& cell = m.cells[s1][s2];
      // A profile is infeasible as a whole if either side cannot play it.
      if (ok1 && ok2) {
        cell.u1 = utility(a1, a2, game.aoi, game.player1);
        cell.u2 = utility(a2, a1, game.aoi, game.player2);
      }
    }
  }
  return m;
}

}  // namespace aoigame
