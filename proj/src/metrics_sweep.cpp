#include "aoigame/metrics_sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "aoigame/baseline_optimal.hpp"

namespace aoigame {

double average_aoi(const SimTrace& trace) { return series_average_aoi(trace.aoi_series); }

double podu(double avg_ne, double avg_opt) {
  if (!(avg_opt > 0.0)) {
    throw DegenerateBaseline("optimal average AoI is zero; PoDU is undefined");
  }
  return avg_ne / avg_opt;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) throw std::invalid_argument(std::string(name) + " axis is empty");
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!(axis[i] > 0.0)) throw std::invalid_argument(std::string(name) + " values must be > 0");
    if (i > 0 && !(axis[i] > axis[i - 1])) {
      throw std::invalid_argument(std::string(name) + " values must be strictly ascending");
    }
  }
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t row, std::size_t col, std::size_t run) {
  std::uint64_t h = splitmix64(base_seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(row));
  h = splitmix64(h ^ static_cast<std::uint64_t>(col));
  return splitmix64(h ^ static_cast<std::uint64_t>(run));
}

void validate(const SweepSpec& spec) {
  check_axis(spec.c_values, "c");
  check_axis(spec.alpha_values, "alpha");
  if (spec.runs_per_cell < 1) throw std::invalid_argument("runs_per_cell must be at least 1");
  validate(spec.sim_template);
}

std::vector<double> linspace(double first, double last, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = first;
    return out;
  }
  const double step = (last - first) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = first + step * static_cast<double>(i);
  out.back() = last;
  return out;
}

double PoduGrid::min() const { return *std::min_element(podu.begin(), podu.end()); }
double PoduGrid::max() const { return *std::max_element(podu.begin(), podu.end()); }

double PoduGrid::fraction_below(double bound) const {
  const auto n = std::count_if(podu.begin(), podu.end(), [bound](double v) { return v < bound; });
  return static_cast<double>(n) / static_cast<double>(podu.size());
}

std::pair<std::size_t, std::size_t> PoduGrid::argmax() const {
  const auto idx = static_cast<std::size_t>(std::max_element(podu.begin(), podu.end()) - podu.begin());
  return {idx / c_values.size(), idx % c_values.size()};
}

SweepError::SweepError(std::size_t row, std::size_t col, const std::string& what)
    : std::runtime_error("cell (alpha_row=" + std::to_string(row) + ", c_col=" + std::to_string(col) +
                         "): " + what),
      alpha_row(row),
      c_col(col) {}

CellResult evaluate_cell(const SweepSpec& spec, std::size_t alpha_row, std::size_t c_col) {
  SimConfig cfg = spec.sim_template;
  for (PlayerParams* p : {&cfg.player1, &cfg.player2}) {
    p->cost = spec.c_values[c_col];
    p->incentive_weight = spec.alpha_values[alpha_row];
  }
  const std::int64_t budget = cfg.player1.tokens + cfg.player2.tokens;
  double ratio_sum = 0.0;
  double horizon_sum = 0.0;
  for (std::int64_t run = 0; run < spec.runs_per_cell; ++run) {
    cfg.seed = cell_seed(spec.base_seed, alpha_row, c_col, static_cast<std::size_t>(run));
    const SimTrace trace = simulate(cfg);
    const std::int64_t horizon = trace.horizon();
    ratio_sum += podu(average_aoi(trace), optimal_average_aoi(horizon, budget));
    horizon_sum += static_cast<double>(horizon);
  }
  const auto runs = static_cast<double>(spec.runs_per_cell);
  return {ratio_sum / runs, horizon_sum / runs};
}

PoduGrid sweep_podu(const SweepSpec& spec) {
  validate(spec);
  PoduGrid grid;
  grid.c_values = spec.c_values;
  grid.alpha_values = spec.alpha_values;
  grid.runs_per_cell = spec.runs_per_cell;
  grid.base_seed = spec.base_seed;
  grid.sim_template = spec.sim_template;

  const std::size_t cols = spec.c_values.size();
  const std::size_t cells = spec.alpha_values.size() * cols;
  grid.podu.assign(cells, 0.0);
  grid.mean_horizon.assign(cells, 0.0);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::size_t error_index = cells;
  std::mutex error_mutex;

  // Cells are independent; results land at their own index.
  auto worker = [&] {
    for (std::size_t i = next++; i < cells && !failed; i = next++) {
      try {
        const CellResult r = evaluate_cell(spec, i / cols, i % cols);
        grid.podu[i] = r.podu;
        grid.mean_horizon[i] = r.mean_horizon;
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        // Keep the lowest-index failure so the report does not depend on scheduling.
        if (i < error_index) {
          error_index = i;
          error = std::make_exception_ptr(SweepError(i / cols, i % cols, e.what()));
        }
        failed = true;
      }
    }
  };

  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return grid;
}

}  // namespace aoigame
