#include <doctest.h>

#include "aoigame/baseline_optimal.hpp"
#include "aoigame/metrics_sweep.hpp"

using namespace aoigame;

namespace {

SimTrace trace_from_updates(std::int64_t horizon, const std::vector<std::int64_t>& updates) {
  SimTrace tr;
  tr.config.horizon = horizon;
  tr.aoi_series.push_back(0);
  for (std::int64_t t = 0; t < horizon; ++t) {
    TraceEvent e;
    e.slot = t;
    e.aoi_before = tr.aoi_series.back();
    const bool up = std::find(updates.begin(), updates.end(), t) != updates.end();
    e.action1 = up ? Action::Transmit : Action::Silent;
    tr.events.push_back(e);
    tr.aoi_series.push_back(up ? 0 : e.aoi_before + 1);
  }
  return tr;
}

SweepSpec small_spec() {
  SweepSpec spec;
  spec.c_values = {1.0, 30.0, 100.0};
  spec.alpha_values = {1.0, 200.0};
  spec.runs_per_cell = 3;
  spec.base_seed = 5;
  spec.sim_template.horizon = 600;
  spec.sim_template.player1.tokens = 8;
  spec.sim_template.player2.tokens = 16;
  return spec;
}

}  // namespace

TEST_CASE("average aoi of traces") {
  CHECK(average_aoi(trace_from_updates(4, {})) == 2.5);
  CHECK(average_aoi(trace_from_updates(6, {2, 4})) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  SimTrace flat;
  flat.aoi_series = {0, 0, 0, 0};
  CHECK(average_aoi(flat) == 0.0);
}

TEST_CASE("podu") {
  CHECK(podu(2.5, 2.5) == 1.0);
  CHECK(podu(1.0, 5.0 / 6.0) == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(podu(5.0 / 6.0, 5.0 / 6.0) == 1.0);
  CHECK_THROWS_AS(podu(1.0, 0.0), DegenerateBaseline);
}

TEST_CASE("trace and schedule averages agree") {
  SimConfig cfg;
  cfg.horizon = 500;
  cfg.player1 = {5.0, 10.0, 8};
  cfg.player2 = {5.0, 10.0, 16};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    cfg.seed = seed;
    const SimTrace tr = simulate(cfg);
    CHECK(average_aoi(tr) == schedule_average_aoi({tr.horizon(), tr.update_slots()}));
  }
}

TEST_CASE("cell seeds depend on every coordinate") {
  const auto s = cell_seed(1, 2, 3, 4);
  CHECK(s == cell_seed(1, 2, 3, 4));
  CHECK(s != cell_seed(0, 2, 3, 4));
  CHECK(s != cell_seed(1, 3, 2, 4));
  CHECK(s != cell_seed(1, 2, 3, 5));
}

TEST_CASE("linspace") {
  const auto xs = linspace(1.0, 100.0, 32);
  CHECK(xs.size() == 32);
  CHECK(xs.front() == 1.0);
  CHECK(xs.back() == 100.0);
  CHECK(linspace(3.0, 9.0, 1) == std::vector<double>{3.0});
}

TEST_CASE("sweep validation") {
  SweepSpec spec = small_spec();
  spec.c_values = {};
  CHECK_THROWS_AS(sweep_podu(spec), std::invalid_argument);
  spec = small_spec();
  spec.alpha_values = {0.0, 1.0};
  CHECK_THROWS_AS(sweep_podu(spec), std::invalid_argument);
  spec = small_spec();
  spec.c_values = {2.0, 1.0};
  CHECK_THROWS_AS(sweep_podu(spec), std::invalid_argument);
  spec = small_spec();
  spec.runs_per_cell = 0;
  CHECK_THROWS_AS(sweep_podu(spec), std::invalid_argument);
}

TEST_CASE("sweep grid shape, range and determinism") {
  SweepSpec spec = small_spec();
  spec.threads = 1;
  const PoduGrid a = sweep_podu(spec);
  REQUIRE(a.podu.size() == 6);
  for (double v : a.podu) CHECK(v >= 1.0 - 1e-9);
  spec.threads = 4;
  const PoduGrid b = sweep_podu(spec);
  CHECK(a.podu == b.podu);
  CHECK(a.mean_horizon == b.mean_horizon);

  // A cell recomputed on its own matches its grid entry.
  const CellResult cell = evaluate_cell(spec, 1, 2);
  CHECK(cell.podu == a.at(1, 2));
}

TEST_CASE("sweep with token exhaustion horizon") {
  SweepSpec spec = small_spec();
  spec.sim_template.horizon = 1'000'000;
  spec.sim_template.stop_when_exhausted = true;
  const PoduGrid g = sweep_podu(spec);
  for (double v : g.podu) CHECK(v >= 1.0 - 1e-9);
  for (double h : g.mean_horizon) CHECK(h < 1'000'000.0);
}

TEST_CASE("single cell at the high-cost configuration") {
  SweepSpec spec;
  spec.c_values = {100.0};
  spec.alpha_values = {200.0};
  spec.runs_per_cell = 2;
  spec.sim_template.horizon = 3356;
  spec.sim_template.player1.tokens = 8;
  spec.sim_template.player2.tokens = 16;
  const PoduGrid g = sweep_podu(spec);
  CHECK(g.at(0, 0) >= 1.0);
  CHECK(std::isfinite(g.at(0, 0)));
}

TEST_CASE("grid statistics") {
  PoduGrid g;
  g.c_values = {1, 2};
  g.alpha_values = {1, 2};
  g.podu = {1.0, 1.05, 1.5, 1.2};
  CHECK(g.min() == 1.0);
  CHECK(g.max() == 1.5);
  CHECK(g.fraction_below(1.1) == 0.5);
  CHECK(g.argmax() == std::pair<std::size_t, std::size_t>{1, 0});
}
