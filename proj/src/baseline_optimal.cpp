#include "aoigame/baseline_optimal.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace aoigame {

void validate(const Schedule& s) {
  if (s.horizon < 1) throw std::invalid_argument("schedule horizon must be at least 1");
  std::int64_t prev = 0;
  for (const std::int64_t slot : s.update_slots) {
    if (slot <= prev || slot > s.horizon) {
      throw std::invalid_argument("update slots must be strictly increasing within [1, horizon]");
    }
    prev = slot;
  }
}

double series_average_aoi(std::span<const std::int64_t> series) {
  if (series.size() < 2) throw std::invalid_argument("AoI series needs at least two samples");
  const auto sum = std::accumulate(series.begin(), series.end(), std::int64_t{0});
  return static_cast<double>(sum) / static_cast<double>(series.size() - 1);
}

double schedule_average_aoi(const Schedule& s) {
  validate(s);
  std::int64_t sum = 0;
  std::int64_t aoi = 0;
  auto next_update = s.update_slots.begin();
  for (std::int64_t t = 0; t < s.horizon; ++t) {
    const bool update = next_update != s.update_slots.end() && *next_update == t;
    if (update) ++next_update;
    aoi = update ? 0 : aoi + 1;
    sum += aoi;  // delta(t+1)
  }
  return static_cast<double>(sum) / static_cast<double>(s.horizon);
}

namespace {

// The AoI series splits into n+1 ramps 0,1,..,L-1 whose lengths sum to T+1.
// Sum of L(L-1)/2 is minimized by lengths differing by at most one. The first
// ramp must have length >= 2 (no update in slot 0); only n == T violates that.
struct Segments {
  std::int64_t count;
  std::int64_t base;   // floor((T+1)/count)
  std::int64_t longer; // number of ramps of length base+1, placed first
};

Segments balanced(std::int64_t horizon, std::int64_t updates) {
  const std::int64_t count = updates + 1;
  return {count, (horizon + 1) / count, (horizon + 1) % count};
}

void check_args(std::int64_t horizon, std::int64_t budget) {
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (budget < 0) throw std::invalid_argument("budget must be non-negative");
}

}  // namespace

Schedule optimal_schedule(std::int64_t horizon, std::int64_t budget) {
  check_args(horizon, budget);
  const std::int64_t n = std::min(budget, horizon);
  Schedule s{horizon, {}};
  s.update_slots.reserve(static_cast<std::size_t>(n));
  if (n == horizon) {
    for (std::int64_t t = 1; t <= horizon; ++t) s.update_slots.push_back(t);
    return s;
  }
  const Segments seg = balanced(horizon, n);
  std::int64_t slot = -1;  // the ramp before the first update starts at t = 0
  for (std::int64_t k = 0; k < n; ++k) {
    slot += seg.base + (k < seg.longer ? 1 : 0);
    s.update_slots.push_back(slot);
  }
  return s;
}

double optimal_average_aoi(std::int64_t horizon, std::int64_t budget) {
  check_args(horizon, budget);
  const std::int64_t n = std::min(budget, horizon);
  if (n == horizon) return 1.0 / static_cast<double>(horizon);
  const Segments seg = balanced(horizon, n);
  const std::int64_t q = seg.base;
  const std::int64_t total =
      seg.longer * (q + 1) * q / 2 + (seg.count - seg.longer) * q * (q - 1) / 2;
  return static_cast<double>(total) / static_cast<double>(horizon);
}

double brute_force_optimal(std::int64_t horizon, std::int64_t budget) {
  check_args(horizon, budget);
  const std::int64_t n_max = std::min(budget, horizon);

  // Count schedules first so the guard triggers before any work.
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(T, k)
  for (std::int64_t k = 0; k <= n_max; ++k) {
    if (k > 0) {
      const auto num = static_cast<std::uint64_t>(horizon - k + 1);
      if (binom > std::numeric_limits<std::uint64_t>::max() / num) {
        total = kMaxEnumeratedSchedules + 1;
        break;
      }
      binom = binom * num / static_cast<std::uint64_t>(k);
    }
    total += binom;
    if (total > kMaxEnumeratedSchedules) break;
  }
  if (total > kMaxEnumeratedSchedules) {
    throw EnumerationTooLarge("too many schedules to enumerate for horizon " +
                              std::to_string(horizon) + " and budget " + std::to_string(budget));
  }

  double best = std::numeric_limits<double>::infinity();
  Schedule s{horizon, {}};
  for (std::int64_t k = 0; k <= n_max; ++k) {
    s.update_slots.resize(static_cast<std::size_t>(k));
    std::iota(s.update_slots.begin(), s.update_slots.end(), std::int64_t{1});
    while (true) {
      best = std::min(best, schedule_average_aoi(s));
      // Advance to the next k-combination of {1..T} in lexicographic order.
      std::int64_t i = k - 1;
      while (i >= 0 && s.update_slots[static_cast<std::size_t>(i)] == horizon - (k - 1 - i)) --i;
      if (i < 0) break;
      auto& slots = s.update_slots;
      ++slots[static_cast<std::size_t>(i)];
      for (std::int64_t j = i + 1; j < k; ++j) {
        slots[static_cast<std::size_t>(j)] = slots[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }
  return best;
}

}  // namespace aoigame
