#ifndef AOIGAME_GAME_CORE_HPP
#define AOIGAME_GAME_CORE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace aoigame {

// Thrown when a player without tokens is asked to transmit.
class InfeasibleAction : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Action : std::uint8_t { Silent = 0, Transmit = 1 };

constexpr int as_int(Action a) { return static_cast<int>(a); }
constexpr Action action_from_int(int v) { return v ? Action::Transmit : Action::Silent; }

struct PlayerParams {
  double cost = 0.0;              // c_i, in AoI slot units
  double incentive_weight = 0.0;  // alpha_i
  std::int64_t tokens = 0;        // G_i

  bool can_transmit() const { return tokens >= 1; }
  bool operator==(const PlayerParams&) const = default;
};

// Throws std::invalid_argument naming the offending field.
void validate(const PlayerParams& p);

struct ActionProfile {
  Action s1 = Action::Silent;
  Action s2 = Action::Silent;

  bool operator==(const ActionProfile&) const = default;
  auto operator<=>(const ActionProfile&) const = default;
  std::string to_string() const;
};

inline constexpr ActionProfile kNone{Action::Silent, Action::Silent};
inline constexpr ActionProfile kOnlyFirst{Action::Transmit, Action::Silent};
inline constexpr ActionProfile kOnlySecond{Action::Silent, Action::Transmit};
inline constexpr ActionProfile kBoth{Action::Transmit, Action::Transmit};

struct StageGame {
  double aoi = 0.0;  // delta(t); real so that threshold ties are representable
  PlayerParams player1;
  PlayerParams player2;

  const PlayerParams& player(int i) const { return i == 0 ? player1 : player2; }
};

// u_i(s_i, s_-i) = -aoi (1-s_i)(1-s_-i) - c_i s_i + alpha_i ln(1 + G_i - s_i)
double utility(Action own, Action other, double aoi, const PlayerParams& params);

struct PayoffCell {
  // nullopt marks a profile that asks a zero-token player to transmit.
  std::optional<double> u1;
  std::optional<double> u2;

  bool feasible() const { return u1.has_value() && u2.has_value(); }
};

// Indexed [s1][s2] with 1 = transmit.
struct PayoffBimatrix {
  std::array<std::array<PayoffCell, 2>, 2> cells{};

  const PayoffCell& at(ActionProfile p) const { return cells[as_int(p.s1)][as_int(p.s2)]; }
  const PayoffCell& at(int s1, int s2) const { return cells[s1][s2]; }
};

PayoffBimatrix payoff_bimatrix(const StageGame& game);

}  // namespace aoigame

#endif  // AOIGAME_GAME_CORE_HPP
