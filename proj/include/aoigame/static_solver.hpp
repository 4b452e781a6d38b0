#ifndef AOIGAME_STATIC_SOLVER_HPP
#define AOIGAME_STATIC_SOLVER_HPP

#include <optional>
#include <utility>
#include <vector>

#include "aoigame/game_core.hpp"

namespace aoigame {

// Absolute tolerance on |aoi - threshold| below which a player is indifferent.
inline constexpr double kTieTolerance = 1e-9;

class UndefinedThreshold : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// theta = c + alpha ln((G+1)/G); G may be real-valued here. No validation.
double threshold_value(double cost, double incentive_weight, double tokens);

// AoI above which transmitting beats staying silent when the other sensor is
// silent. Throws UndefinedThreshold for a player without tokens.
double threshold(const PlayerParams& params);

enum class BestResponse { Silent, Transmit, Indifferent };

BestResponse best_response(Action other, double aoi, const PlayerParams& params);

struct MixedProfile {
  double p1 = 0.0;  // transmit probabilities
  double p2 = 0.0;
};

struct EquilibriumSet {
  std::vector<ActionProfile> pure;  // sorted ascending
  std::optional<MixedProfile> mixed;

  bool has_pure(ActionProfile p) const;
};

// All pure NEs, derived from the threshold taxonomy (no payoff enumeration).
std::vector<ActionProfile> pure_nash(const StageGame& game);

// The fully mixed NE solving the indifference system, or nullopt when a player
// is below threshold, lacks tokens, or a probability leaves [0,1].
std::optional<MixedProfile> mixed_nash(const StageGame& game);

EquilibriumSet equilibrium_set(const StageGame& game);

// E[u_i(1, sigma_-i)] - E[u_i(0, sigma_-i)] for each player.
std::pair<double, double> indifference_residual(const StageGame& game, const MixedProfile& profile);

// The closed form p_-i = eps_i (1/theta_i + 1) as printed alongside the
// indifference system. Kept for comparison only; it does not zero the
// residual. The solver uses eps_i / (theta_i + eps_i).
double printed_mixed_probability(double aoi, const PlayerParams& params);

// Critical values at which a player's threshold equals aoi.
double critical_cost(double aoi, const PlayerParams& params);
double critical_alpha(double aoi, const PlayerParams& params);
// Real-valued token count at which the threshold equals aoi. Throws
// std::domain_error when aoi <= cost. Returns 0 for incentive_weight == 0.
double critical_tokens(double aoi, const PlayerParams& params);

struct CriticalValues {
  double c_star = 0.0;
  double alpha_star = 0.0;
  std::optional<double> g_star;  // absent when aoi <= cost
};

CriticalValues critical_values(double aoi, const PlayerParams& params);

}  // namespace aoigame

#endif  // AOIGAME_STATIC_SOLVER_HPP
