#ifndef AOIGAME_METRICS_SWEEP_HPP
#define AOIGAME_METRICS_SWEEP_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "aoigame/repeated_game.hpp"

namespace aoigame {

double average_aoi(const SimTrace& trace);

class DegenerateBaseline : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Price of delayed updates: avg_ne / avg_opt.
double podu(double avg_ne, double avg_opt);

// Per-run seed from (base, row, col, run); independent of evaluation order.
std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t row, std::size_t col, std::size_t run);

struct SweepSpec {
  std::vector<double> c_values;      // ascending, > 0
  std::vector<double> alpha_values;  // ascending, > 0
  std::int64_t runs_per_cell = 16;
  std::uint64_t base_seed = 0;
  // Horizon, tokens, policy and stop_when_exhausted are taken from here; the
  // cost, weight and seed fields are overwritten per run.
  SimConfig sim_template;
  unsigned threads = 0;  // 0 = hardware concurrency
};

void validate(const SweepSpec& spec);

std::vector<double> linspace(double first, double last, std::size_t count);

struct PoduGrid {
  std::vector<double> c_values;
  std::vector<double> alpha_values;
  std::vector<double> podu;         // row-major, rows = alpha, cols = c
  std::vector<double> mean_horizon; // realized T averaged over runs, same layout
  std::int64_t runs_per_cell = 0;
  std::uint64_t base_seed = 0;
  SimConfig sim_template;

  double at(std::size_t alpha_row, std::size_t c_col) const {
    return podu[alpha_row * c_values.size() + c_col];
  }
  double min() const;
  double max() const;
  double fraction_below(double bound) const;
  // (alpha_row, c_col) of the maximum cell; first one in row-major order on ties.
  std::pair<std::size_t, std::size_t> argmax() const;
};

class SweepError : public std::runtime_error {
 public:
  SweepError(std::size_t alpha_row, std::size_t c_col, const std::string& what);
  std::size_t alpha_row;
  std::size_t c_col;
};

// PoDU of one (c, alpha) cell: mean over runs of (run average AoI) / (optimum
// for that run's horizon and the pooled budget G1 + G2).
struct CellResult {
  double podu = 0.0;
  double mean_horizon = 0.0;
};
CellResult evaluate_cell(const SweepSpec& spec, std::size_t alpha_row, std::size_t c_col);

PoduGrid sweep_podu(const SweepSpec& spec);

}  // namespace aoigame

#endif  // AOIGAME_METRICS_SWEEP_HPP
