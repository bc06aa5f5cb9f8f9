#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lsched/errors.hpp"
#include "lsched/policy.hpp"
#include "oracles.hpp"

using namespace lsched;

namespace {

// Frozen from an independent bounded scalar minimisation of (P + 2) / log(1 + P)
// (scipy minimize_scalar) and from scipy's lambertw at 1/e.
constexpr double kLambertPowerPhi2 = 2.591121476668622;
// 1 / W(1) - 1 with W(1) from Newton iteration.
constexpr double kPrintedPowerPhi2 = 0.7632228343518968;

SlotObservation observation(std::vector<double> gains, std::vector<std::uint8_t> arrivals) {
  return SlotObservation{std::move(gains), std::move(arrivals)};
}

}  // namespace

TEST_CASE("nrt_power water level") {
  CHECK(nrt_power(100.0, 10.0, 1.0, 20.0, 1.0) == doctest::Approx(9.0));
  CHECK(nrt_power(1.0, 10.0, 0.05, 20.0, 1.0) == 0.0);
  CHECK(nrt_power(1e6, 1.0, 1.0, 20.0, 1.0) == 20.0);
  CHECK(nrt_power(5.0, 0.0, 1.0, 20.0, 5.0) == 20.0);
  // The slot length scales the water level: 5 * 100 / 10 - 1 = 49, clipped.
  CHECK(nrt_power(100.0, 10.0, 1.0, 20.0, 5.0) == 20.0);
  CHECK(nrt_power(10.0, 10.0, 1.0, 20.0, 5.0) == doctest::Approx(4.0));
  CHECK(nrt_power(10.0, 10.0, 0.0, 20.0, 5.0) == 0.0);
}

TEST_CASE("nrt_psi values") {
  CHECK(nrt_psi(100.0, 10.0, 1.0, 0.0, 5.0) == 0.0);
  CHECK(nrt_psi(100.0, 10.0, 1.0, 9.0, 5.0) == doctest::Approx(212.2585092994).epsilon(1e-12));
  CHECK(nrt_psi(7.0, 0.0, 0.5, 20.0, 5.0) == doctest::Approx(7.0 * std::log(11.0)));
}

TEST_CASE("water-filling power maximises nrt_psi") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double q = 150.0 * u(gen);
    const double x = 0.01 + 50.0 * u(gen);
    const double g = 0.01 + 5.0 * u(gen);
    const double ts = trial % 2 ? 5.0 : 1.0;
    const double p = nrt_power(q, x, g, 20.0, ts);
    const double best = oracle::grid_max(
        [&](double pw) { return q * std::log(1.0 + pw * g) - x * pw / ts; }, 0.0, 20.0, 10000);
    REQUIRE(nrt_psi(q, x, g, p, ts) >= best - 1e-8);
  }
}

TEST_CASE("select_nrt") {
  SystemConfig config = make_config(0, 1, 0.0, 1.0);
  ControllerState state = ControllerState::empty(config);
  Rng rng(1, kTieBreakStream);

  state.q = {10.0};
  state.x = 0.5;
  auto pick = select_nrt(state, observation({1.0}, {1}), config, rng);
  REQUIRE(pick.has_value());
  CHECK(pick->user == 0);
  CHECK(pick->power == doctest::Approx(nrt_power(10.0, 0.5, 1.0, 20.0, 5.0)));
  CHECK(pick->psi_star > 0.0);

  state.q = {0.0};
  CHECK_FALSE(select_nrt(state, observation({1.0}, {1}), config, rng).has_value());

  SystemConfig none = make_config(2, 0, 0.5, 0.0);
  CHECK_FALSE(select_nrt(ControllerState::empty(none), observation({1.0, 1.0}, {1, 1}), none, rng)
                  .has_value());
}

TEST_CASE("select_nrt prefers the larger value") {
  SystemConfig config = make_config(0, 3, 0.0, 1.0);
  ControllerState state = ControllerState::empty(config);
  state.q = {5.0, 40.0, 12.0};
  state.x = 3.0;
  Rng rng(2, kTieBreakStream);
  const auto pick = select_nrt(state, observation({1.0, 1.0, 1.0}, {0, 0, 0}), config, rng);
  REQUIRE(pick.has_value());
  CHECK(pick->user == 1);
}

TEST_CASE("select_nrt breaks exact ties uniformly") {
  SystemConfig config = make_config(0, 2, 0.0, 1.0);
  ControllerState state = ControllerState::empty(config);
  state.q = {30.0, 30.0};
  state.x = 4.0;
  const auto obs = observation({0.8, 0.8}, {1, 1});
  Rng rng(123, kTieBreakStream);
  int first = 0;
  constexpr int kTrials = 10000;
  for (int t = 0; t < kTrials; ++t) {
    first += select_nrt(state, obs, config, rng)->user == 0 ? 1 : 0;
  }
  CHECK(std::abs(first / static_cast<double>(kTrials) - 0.5) <= 0.02);
}

TEST_CASE("rt_power values") {
  const double e = std::exp(1.0);
  CHECK(rt_power(1.0, 1.0, 20.0) == doctest::Approx(e - 1.0).epsilon(1e-12));
  CHECK(rt_power(2.0, 0.5, 20.0) == doctest::Approx((e - 1.0) / 2.0).epsilon(1e-12));
  CHECK(rt_power(1.0, 2.0, 20.0) == doctest::Approx(kLambertPowerPhi2).epsilon(1e-9));
  CHECK(rt_power(1.0, 1e6, 20.0) == 20.0);
  CHECK(rt_power(1.0, 0.0, 20.0) == 0.0);
  CHECK(rt_power(1.0, std::numeric_limits<double>::infinity(), 20.0) == 20.0);
  CHECK_THROWS_AS(rt_power(0.0, 1.0, 20.0), DomainError);
  CHECK_THROWS_AS(rt_power(1.0, -1.0, 20.0), DomainError);
}

TEST_CASE("printed Lambert power values") {
  CHECK(rt_power_as_printed(1.0, 1.0, 20.0) == 0.0);
  CHECK(rt_power_as_printed(1.0, 2.0, 20.0) == doctest::Approx(kPrintedPowerPhi2).epsilon(1e-9));
  CHECK(rt_power_as_printed(1.0, 1e6, 20.0) == 20.0);
  CHECK_THROWS_AS(rt_power_as_printed(1.0, 0.5, 20.0), DomainError);
}

TEST_CASE("rt_power minimises the per-packet cost (P + phi~) / log(1 + P g)") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const double g = 0.05 + 5.0 * u(gen);
    const double phi_tilde = 20.0 * u(gen) * u(gen);
    const double p_max = 20.0;
    const auto cost = [&](double p) { return -(p + phi_tilde) / std::log(1.0 + p * g); };
    const double best = oracle::grid_max(cost, 1e-6, p_max, 20000);
    REQUIRE(cost(rt_power(g, phi_tilde, p_max)) >= best - 1e-9 * std::abs(best));
  }
}

TEST_CASE("rt_power is nonincreasing in gain, the printed form is not") {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double phi_tilde = 0.01 + 30.0 * u(gen);
    double last = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 1000; ++k) {
      const double g = 0.01 + 0.01 * k;
      const double p = rt_power(g, phi_tilde, 20.0);
      REQUIRE(p <= last * (1.0 + 1e-12));
      last = p;
    }
  }
  // Printed form: zero at g = 1 / phi~, positive just above.
  CHECK(rt_power_as_printed(0.5, 2.0, 20.0) < rt_power_as_printed(1.0, 2.0, 20.0));
}

TEST_CASE("rt_psi") {
  CHECK(rt_psi(5.0, 2.0, 3.0, 1.0, 5.0, false) == 0.0);
  CHECK(rt_psi(5.0, 0.0, 17.0, 0.4, 5.0) == 5.0);
  CHECK(rt_psi(5.0, 2.0, 3.0, 1.0, 5.0) == doctest::Approx(3.8));
}

TEST_CASE("pack_rt_set leaves slack to the NRT user") {
  SystemConfig config = make_config(1, 1, 1.0, 1.0);
  ControllerState state = ControllerState::empty(config);
  state.y = {5.0};
  state.x = 2.0;
  const auto obs = observation({1.0, 1.0}, {1, 1});
  const std::vector<std::size_t> set{0};
  const auto alloc = pack_rt_set(set, state, obs, 10.0, config);
  REQUIRE(alloc.has_value());
  CHECK(alloc->phi == 0.0);
  CHECK(alloc->nrt_airtime > 0.0);
  CHECK(alloc->airtimes[0] + alloc->nrt_airtime == doctest::Approx(config.slot_seconds));
  CHECK(alloc->powers[0] == doctest::Approx(rt_power(1.0, 10.0 * 5.0 / 2.0, 20.0)));
}

TEST_CASE("pack_rt_set rejects sets that do not fit at p_max") {
  SystemConfig config = make_config(2, 0, 1.0, 0.0);
  ControllerState state = ControllerState::empty(config);
  state.x = 1.0;
  const std::vector<std::size_t> set{0, 1};
  CHECK_FALSE(pack_rt_set(set, state, observation({0.001, 1.0}, {1, 1}), 0.0, config).has_value());
  CHECK_FALSE(pack_rt_set(set, state, observation({0.0, 1.0}, {1, 1}), 0.0, config).has_value());
}

TEST_CASE("pack_rt_set with zero power backlog transmits at p_max") {
  SystemConfig config = make_config(2, 1, 1.0, 1.0);
  ControllerState state = ControllerState::empty(config);
  state.y = {3.0, 4.0};
  const std::vector<std::size_t> set{0, 1};
  const auto alloc = pack_rt_set(set, state, observation({1.0, 2.0, 1.0}, {1, 1, 1}), 7.0, config);
  REQUIRE(alloc.has_value());
  CHECK(alloc->powers == std::vector<double>{20.0, 20.0});
  CHECK(alloc->objective == doctest::Approx(7.0 + 7.0 * alloc->nrt_airtime));
}

TEST_CASE("symmetric pair fills the slot with equal powers") {
  SystemConfig config = make_config(2, 0, 1.0, 0.0);
  ControllerState state = ControllerState::empty(config);
  state.y = {10.0, 10.0};
  state.x = 5.0;
  const double g = 0.7;
  const auto obs = observation({g, g}, {1, 1});
  const std::vector<std::size_t> set{0, 1};
  const auto alloc = pack_rt_set(set, state, obs, 0.0, config);
  REQUIRE(alloc.has_value());
  CHECK(alloc->phi > 0.0);
  CHECK(alloc->powers[0] == alloc->powers[1]);
  CHECK(std::abs(alloc->airtimes[0] + alloc->airtimes[1] - config.slot_seconds) <=
        config.airtime_tolerance());

  // Independent check: best common power on a 1000-point grid.
  oracle::TwoUserSlot slot{{10.0, 10.0}, {g, g}, 5.0, 0.0, 1.0, 5.0};
  double best = -std::numeric_limits<double>::infinity();
  double step = 20.0 / 999.0;
  for (int k = 1; k < 1000; ++k) best = std::max(best, slot.objective(k * step, k * step));
  CHECK(alloc->objective >= best - 1e-9);
  // Power that exactly fills the slot: 2 / log(1 + P g) = 5.
  CHECK(alloc->powers[0] == doctest::Approx(std::expm1(2.0 / 5.0) / g).epsilon(1e-7));
}

TEST_CASE("pack_rt_set complementary slackness on random sets") {
  std::mt19937_64 gen(51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SystemConfig config = make_config(3, 1, 1.0, 1.0);
  int packed = 0;
  for (int trial = 0; trial < 500; ++trial) {
    ControllerState state = ControllerState::empty(config);
    state.y = {50.0 * u(gen), 50.0 * u(gen), 50.0 * u(gen)};
    state.x = trial % 5 == 0 ? 0.0 : 20.0 * u(gen);
    const auto obs = observation({3.0 * u(gen), 3.0 * u(gen), 3.0 * u(gen), u(gen)}, {1, 1, 1, 1});
    const double psi_star = trial % 3 == 0 ? 0.0 : 80.0 * u(gen);
    const std::vector<std::size_t> set{0, 1, 2};
    const auto alloc = pack_rt_set(set, state, obs, psi_star, config);
    if (!alloc) continue;
    ++packed;
    double used = 0.0;
    for (std::size_t m = 0; m < 3; ++m) {
      REQUIRE(alloc->powers[m] >= 0.0);
      REQUIRE(alloc->powers[m] <= config.p_max);
      REQUIRE(alloc->airtimes[m] == rt_airtime(alloc->powers[m], obs.gains[m], 1.0));
      used += alloc->airtimes[m];
    }
    REQUIRE(used <= config.slot_seconds);
    const bool slack = alloc->phi <= config.airtime_tolerance();
    const bool tight = std::abs(used - config.slot_seconds) <= config.airtime_tolerance();
    REQUIRE((slack || tight));
    REQUIRE(alloc->objective == set_objective(*alloc, NrtCandidate{0, 1.0, psi_star},
                                              config.slot_seconds));
  }
  CHECK(packed > 100);
}

TEST_CASE("set_objective") {
  RtAllocation empty;
  empty.nrt_airtime = 5.0;
  CHECK(set_objective(empty, NrtCandidate{0, 3.0, 12.5}, 5.0) == 62.5);
  CHECK(set_objective(empty, std::nullopt, 5.0) == 0.0);

  // One RT user that exactly fills the slot at p_max with x = 0.
  SystemConfig config = make_config(1, 1, 1.0, 1.0);
  ControllerState state = ControllerState::empty(config);
  state.y = {6.5};
  const double g = std::expm1(config.packet_bits / config.slot_seconds) / config.p_max;
  const std::vector<std::size_t> set{0};
  const auto alloc = pack_rt_set(set, state, observation({g, 1.0}, {1, 1}), 0.0, config);
  REQUIRE(alloc.has_value());
  CHECK(alloc->airtimes[0] == doctest::Approx(config.slot_seconds).epsilon(1e-12));
  CHECK(set_objective(*alloc, std::nullopt, config.slot_seconds) == 6.5);
  CHECK(set_objective(*alloc, NrtCandidate{0, 20.0, 40.0}, config.slot_seconds) ==
        doctest::Approx(6.5).epsilon(1e-9));
}

TEST_CASE("packed two-user sets match a joint power grid") {
  std::mt19937_64 gen(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SystemConfig config = make_config(2, 1, 1.0, 1.0);
  int checked = 0;
  int printed_worse = 0;
  for (int trial = 0; trial < 40; ++trial) {
    ControllerState state = ControllerState::empty(config);
    state.y = {20.0 + 60.0 * u(gen), 20.0 + 60.0 * u(gen)};
    state.x = 1.0 + 20.0 * u(gen);
    const double g0 = 0.2 + 3.0 * u(gen), g1 = 0.2 + 3.0 * u(gen);
    const double psi_star = 30.0 * u(gen);
    const auto obs = observation({g0, g1, 1.0}, {1, 1, 1});
    const std::vector<std::size_t> set{0, 1};
    const auto alloc = pack_rt_set(set, state, obs, psi_star, config);
    if (!alloc) continue;
    oracle::TwoUserSlot slot{{state.y[0], state.y[1]}, {g0, g1}, state.x, psi_star, 1.0, 5.0};
    double best = -std::numeric_limits<double>::infinity();
    int bi = 0, bj = 0;
    const double step = 20.0 / 100.0;
    for (int i = 1; i <= 100; ++i) {
      for (int j = 1; j <= 100; ++j) {
        const double v = slot.objective(i * step, j * step);
        if (v > best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (!std::isfinite(best)) continue;
    double slack = 0.0;
    const std::pair<int, int> moves[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& [di, dj] : moves) {
      const double v = slot.objective((bi + di) * step, (bj + dj) * step);
      if (std::isfinite(v)) slack = std::max(slack, std::abs(best - v));
    }
    ++checked;
    REQUIRE(alloc->objective >= best - slack);

    // Same multiplier search with the printed formula.
    if (state.x > 0.0) {
      const double phi_tilde = (psi_star + alloc->phi) * config.slot_seconds / state.x;
      if (phi_tilde * std::min(g0, g1) >= 1.0) {
        const double p0 = rt_power_as_printed(g0, phi_tilde, 20.0);
        const double p1 = rt_power_as_printed(g1, phi_tilde, 20.0);
        if (slot.objective(p0, p1) < alloc->objective - 1e-6) ++printed_worse;
      }
    }
  }
  CHECK(checked >= 20);
  MESSAGE("printed formula strictly worse in " << printed_worse << " of " << checked << " sets");
}
