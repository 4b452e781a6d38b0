#include <doctest.h>

#include <numeric>

#include "aoigame/repeated_game.hpp"

using namespace aoigame;

namespace {

SimConfig high_cost(std::uint64_t seed = 1) {
  SimConfig c;
  c.horizon = 3356;
  c.player1 = {100.0, 200.0, 8};
  c.player2 = {100.0, 200.0, 16};
  c.seed = seed;
  return c;
}

SimConfig low_cost(std::uint64_t seed = 1) {
  SimConfig c = high_cost(seed);
  c.horizon = 66;
  c.player1.cost = c.player2.cost = 1.0;
  c.player1.incentive_weight = c.player2.incentive_weight = 2.0;
  return c;
}

void check_trace_invariants(const SimTrace& tr) {
  const SimConfig& c = tr.config;
  REQUIRE(tr.aoi_series.size() == tr.events.size() + 1);
  CHECK(tr.aoi_series[0] == 0);
  std::int64_t t1 = c.player1.tokens;
  std::int64_t t2 = c.player2.tokens;
  for (std::size_t t = 0; t < tr.events.size(); ++t) {
    const TraceEvent& e = tr.events[t];
    CHECK(e.slot == static_cast<std::int64_t>(t));
    CHECK(e.aoi_before == tr.aoi_series[t]);
    CHECK(e.aoi_before <= e.slot);
    if (e.action1 == Action::Transmit) CHECK(t1 >= 1);
    if (e.action2 == Action::Transmit) CHECK(t2 >= 1);
    // No transmission below the transmitter's current threshold.
    const auto aoi = static_cast<double>(e.aoi_before);
    if (e.action1 == Action::Transmit) CHECK(aoi >= threshold({c.player1.cost, c.player1.incentive_weight, t1}) - 1e-9);
    if (e.action2 == Action::Transmit) CHECK(aoi >= threshold({c.player2.cost, c.player2.incentive_weight, t2}) - 1e-9);
    t1 -= as_int(e.action1);
    t2 -= as_int(e.action2);
    CHECK(e.tokens1_after == t1);
    CHECK(e.tokens2_after == t2);
    const std::int64_t next = tr.aoi_series[t + 1];
    CHECK(next == (e.any_transmit() ? 0 : tr.aoi_series[t] + 1));
  }
  const std::int64_t used = (c.player1.tokens - t1) + (c.player2.tokens - t2);
  CHECK(used == tr.transmissions(0) + tr.transmissions(1));
}

}  // namespace

TEST_CASE("policy names round-trip") {
  for (auto p : {SelectionPolicy::MixedSampling, SelectionPolicy::Lexicographic, SelectionPolicy::TokenPriority,
                 SelectionPolicy::Alternating}) {
    CHECK(parse_policy(to_string(p)) == p);
  }
  CHECK_FALSE(parse_policy("greedy").has_value());
}

TEST_CASE("rng is reproducible and in [0,1)") {
  Rng a(5), b(5);
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("select_profile") {
  Rng rng(0);
  SimState st;
  SUBCASE("unique equilibria are returned for every policy") {
    for (auto p : {SelectionPolicy::MixedSampling, SelectionPolicy::Lexicographic, SelectionPolicy::TokenPriority,
                   SelectionPolicy::Alternating}) {
      const auto none = select_profile(EquilibriumSet{{kNone}, std::nullopt}, st, p, rng);
      CHECK(none.profile == kNone);
      CHECK(none.kind == EquilibriumKind::NoTransmit);
      const auto only2 = select_profile(equilibrium_set({115.0, {100, 200, 8}, {100, 200, 16}}), st, p, rng);
      CHECK(only2.profile == kOnlySecond);
      CHECK(only2.kind == EquilibriumKind::PureUnique);
    }
  }
  const EquilibriumSet contested{{kOnlySecond, kOnlyFirst}, MixedProfile{0.5, 0.5}};
  SUBCASE("lexicographic") {
    const auto s = select_profile(contested, st, SelectionPolicy::Lexicographic, rng);
    CHECK(s.profile == kOnlyFirst);
    CHECK(s.kind == EquilibriumKind::PureSelected);
  }
  SUBCASE("token priority") {
    st.tokens1 = 3;
    st.tokens2 = 5;
    CHECK(select_profile(contested, st, SelectionPolicy::TokenPriority, rng).profile == kOnlySecond);
    st.tokens1 = 6;
    CHECK(select_profile(contested, st, SelectionPolicy::TokenPriority, rng).profile == kOnlyFirst);
    st.tokens1 = 5;
    CHECK(select_profile(contested, st, SelectionPolicy::TokenPriority, rng).kind == EquilibriumKind::MixedSampled);
  }
  SUBCASE("alternating") {
    st.contested_slots = 0;
    CHECK(select_profile(contested, st, SelectionPolicy::Alternating, rng).profile == kOnlyFirst);
    st.contested_slots = 1;
    CHECK(select_profile(contested, st, SelectionPolicy::Alternating, rng).profile == kOnlySecond);
  }
  SUBCASE("mixed sampling frequencies") {
    const EquilibriumSet eqs{{kOnlySecond, kOnlyFirst}, MixedProfile{0.25, 0.75}};
    int n1 = 0, n2 = 0;
    const int draws = 40000;
    for (int i = 0; i < draws; ++i) {
      const auto s = select_profile(eqs, st, SelectionPolicy::MixedSampling, rng);
      n1 += as_int(s.profile.s1);
      n2 += as_int(s.profile.s2);
    }
    CHECK(n1 / double(draws) == doctest::Approx(0.25).epsilon(0.04));
    CHECK(n2 / double(draws) == doctest::Approx(0.75).epsilon(0.02));
  }
  SUBCASE("threshold ties stay silent") {
    const auto s = select_profile(EquilibriumSet{{kNone, kOnlyFirst}, std::nullopt}, st,
                                  SelectionPolicy::Lexicographic, rng);
    CHECK(s.profile == kNone);
  }
}

TEST_CASE("step") {
  const SimConfig cfg = high_cost();
  Rng rng(0);
  SUBCASE("zero aoi never transmits") {
    const auto [next, ev] = step(SimState::initial(cfg), cfg, rng);
    CHECK_FALSE(ev.any_transmit());
    CHECK(next.aoi == 1);
    CHECK(next.slot == 1);
  }
  SUBCASE("just below the lower threshold") {
    const auto [next, ev] = step(SimState{112, 112, 8, 16, 0}, cfg, rng);
    CHECK_FALSE(ev.any_transmit());
    CHECK(next.aoi == 113);
  }
  SUBCASE("just above the lower threshold") {
    const auto [next, ev] = step(SimState{113, 113, 8, 16, 0}, cfg, rng);
    CHECK(ev.action1 == Action::Silent);
    CHECK(ev.action2 == Action::Transmit);
    CHECK(ev.kind == EquilibriumKind::PureUnique);
    CHECK(next.tokens1 == 8);
    CHECK(next.tokens2 == 15);
    CHECK(next.aoi == 0);
  }
}

TEST_CASE("simulate without tokens is a pure ramp") {
  SimConfig cfg = low_cost();
  cfg.horizon = 10;
  cfg.player1.tokens = cfg.player2.tokens = 0;
  const SimTrace tr = simulate(cfg);
  std::vector<std::int64_t> ramp(11);
  std::iota(ramp.begin(), ramp.end(), 0);
  CHECK(tr.aoi_series == ramp);
  CHECK(tr.transmissions(0) + tr.transmissions(1) == 0);
}

TEST_CASE("simulate rejects bad configs") {
  SimConfig cfg = low_cost();
  cfg.horizon = 0;
  CHECK_THROWS_AS(simulate(cfg), std::invalid_argument);
  cfg = low_cost();
  cfg.player2.cost = -1;
  CHECK_THROWS_AS(simulate(cfg), std::invalid_argument);
}

TEST_CASE("simulate: high cost and weight lets the richer sensor go first") {
  const SimTrace tr = simulate(high_cost(3));
  check_trace_invariants(tr);
  const auto slots = tr.update_slots();
  REQUIRE(slots.size() >= 8);
  CHECK(slots.front() == 113);
  for (std::size_t k = 0; k < 8; ++k) {
    const auto& e = tr.events[static_cast<std::size_t>(slots[k])];
    CHECK(e.action1 == Action::Silent);
    CHECK(e.action2 == Action::Transmit);
  }
  // While tokens differ the unique equilibrium belongs to the richer sensor.
  for (const auto& e : tr.events) {
    if (!e.any_transmit() || e.collision()) continue;
    const std::int64_t before1 = e.tokens1_after + as_int(e.action1);
    const std::int64_t before2 = e.tokens2_after + as_int(e.action2);
    if (before1 > before2) CHECK(e.action1 == Action::Transmit);
    if (before2 > before1) CHECK(e.action2 == Action::Transmit);
  }
}

TEST_CASE("simulate: low cost updates often") {
  const SimTrace tr = simulate(low_cost(2));
  check_trace_invariants(tr);
  const auto slots = tr.update_slots();
  REQUIRE(slots.size() >= 2);
  for (std::size_t k = 1; k < slots.size(); ++k) CHECK(slots[k] - slots[k - 1] <= 8);
}

TEST_CASE("simulate invariants across policies and seeds") {
  for (auto p : {SelectionPolicy::MixedSampling, SelectionPolicy::Lexicographic, SelectionPolicy::TokenPriority,
                 SelectionPolicy::Alternating}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      SimConfig cfg = high_cost(seed);
      cfg.policy = p;
      check_trace_invariants(simulate(cfg));
      SimConfig low = low_cost(seed);
      low.policy = p;
      check_trace_invariants(simulate(low));
    }
  }
}

TEST_CASE("deterministic policies ignore the seed") {
  SimConfig a = high_cost(1), b = high_cost(99);
  a.policy = b.policy = SelectionPolicy::Alternating;
  const auto ta = simulate(a), tb = simulate(b);
  CHECK(ta.aoi_series == tb.aoi_series);
}

TEST_CASE("identical configs give identical traces") {
  const auto a = simulate(high_cost(21));
  const auto b = simulate(high_cost(21));
  CHECK(a.aoi_series == b.aoi_series);
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    CHECK(a.events[i].action1 == b.events[i].action1);
    CHECK(a.events[i].action2 == b.events[i].action2);
    CHECK(a.events[i].kind == b.events[i].kind);
  }
}

TEST_CASE("stop_when_exhausted ends with the last token and keeps the prefix") {
  SimConfig cfg = low_cost(4);
  cfg.horizon = 100000;
  cfg.stop_when_exhausted = true;
  const SimTrace tr = simulate(cfg);
  REQUIRE(!tr.events.empty());
  CHECK(tr.events.back().any_transmit());
  CHECK(tr.events.back().tokens1_after == 0);
  CHECK(tr.events.back().tokens2_after == 0);
  CHECK(tr.aoi_series.back() == 0);

  SimConfig fixed = cfg;
  fixed.stop_when_exhausted = false;
  fixed.horizon = tr.horizon();
  CHECK(simulate(fixed).aoi_series == tr.aoi_series);
}
