#ifndef AOIGAME_BASELINE_OPTIMAL_HPP
#define AOIGAME_BASELINE_OPTIMAL_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace aoigame {

// A centralized schedule: at most one update per slot, update slots in [1, T].
// An update in slot t resets the AoI observed in slot t+1.
struct Schedule {
  std::int64_t horizon = 1;
  std::vector<std::int64_t> update_slots;  // strictly increasing
};

void validate(const Schedule& s);

// (1/T) * sum_{t=0..T} delta(t) for an AoI series of length T+1. This is the
// shared time-average used for both equilibrium traces and schedules.
double series_average_aoi(std::span<const std::int64_t> series);

double schedule_average_aoi(const Schedule& s);

// Balanced spacing with min(budget, horizon) updates; minimal average AoI.
Schedule optimal_schedule(std::int64_t horizon, std::int64_t budget);

// Closed-form average AoI of optimal_schedule, without building the slots.
double optimal_average_aoi(std::int64_t horizon, std::int64_t budget);

class EnumerationTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::uint64_t kMaxEnumeratedSchedules = 10'000'000;

// Exhaustive minimum over every schedule with at most `budget` updates.
double brute_force_optimal(std::int64_t horizon, std::int64_t budget);

}  // namespace aoigame

#endif  // AOIGAME_BASELINE_OPTIMAL_HPP
