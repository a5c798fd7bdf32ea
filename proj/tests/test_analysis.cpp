#include <cmath>

#include "doctest.h"

#include "core/analysis.hpp"
#include "core/rng.hpp"

using namespace adsgame;

namespace {

ModelParams baseline() { return validate_params(2, 1.3, 0.6, 1, 1, 0.1); }

ModelParams at(double q, double alpha, double gamma = 1.3) {
  return validate_params(q, gamma, alpha, 1, 1, 0.1);
}

}  // namespace

TEST_CASE("strategy ranking at the baseline calibration") {
  const std::vector<RankedProfit> r = rank_strategies(baseline());
  REQUIRE(r.size() == 4);
  CHECK(r[0].strategy == Strategy::UP);  // ties with US break in enum order
  CHECK(r[1].strategy == Strategy::US);
  CHECK(r[2].strategy == Strategy::BP);
  CHECK(r[3].strategy == Strategy::BS);
  CHECK(r[0].profit == doctest::Approx(2.33967).epsilon(1e-5));
  CHECK(r[1].profit == doctest::Approx(2.33967).epsilon(1e-5));
  CHECK(r[2].profit == doctest::Approx(2.28710).epsilon(1e-5));
  CHECK(r[3].profit == doctest::Approx(2.19878).epsilon(1e-5));
  CHECK(r[1].epsilon_limit);
}

TEST_CASE("strict-epsilon mode breaks the knife-edge toward perpetual") {
  AnalysisOptions strict;
  strict.strict_epsilon = true;
  const std::vector<RankedProfit> r = rank_strategies(baseline(), strict);
  CHECK(r[0].strategy == Strategy::UP);
  CHECK(r[1].strategy == Strategy::US);
  CHECK(r[0].profit > r[1].profit);
  CHECK(r[0].profit - r[1].profit <= (3 + 0.6) / 2 * 1e-6 + 1e-12);
}

TEST_CASE("ranking flips toward bundling at high reliability") {
  const std::vector<RankedProfit> r3 = rank_strategies(at(3, 0.9));
  CHECK(r3[0].strategy == Strategy::BP);
  CHECK(r3[1].strategy == Strategy::BS);
  CHECK(r3[0].profit == doctest::Approx(3.06610).epsilon(1e-4));
  CHECK(r3[1].profit == doctest::Approx(3.06452).epsilon(1e-4));

  const std::vector<RankedProfit> r4 = rank_strategies(at(4, 0.9));
  CHECK(r4[0].strategy == Strategy::BS);
  CHECK(r4[1].strategy == Strategy::BP);
  CHECK(r4[0].profit == doctest::Approx(3.83678).epsilon(1e-4));
}

TEST_CASE("region map over a small grid") {
  const RegionMap map =
      region_map(baseline(), Axis::q, linspace(1.5, 4.5, 3), Axis::alpha,
                 linspace(0.2, 0.9, 3), {Strategy::BP, Strategy::BS});
  CHECK(map.cells.size() == 9);
  for (std::size_t i1 = 0; i1 < 3; ++i1) {
    for (std::size_t i2 = 0; i2 < 3; ++i2) {
      const RegionCell& cell = map.at(i1, i2);
      CHECK(cell.axis1_value == map.grid1[i1]);
      CHECK(cell.axis2_value == map.grid2[i2]);
      CHECK(cell.gap >= 0);
      // the subset excludes the unbundled strategies
      CHECK(cell.case_ids[static_cast<std::size_t>(Strategy::UP)] == -1);
      CHECK(std::isnan(cell.profits[static_cast<std::size_t>(Strategy::US)]));
      // winner consistent with a direct comparison
      const ModelParams p = at(cell.axis1_value, cell.axis2_value);
      const double bp = equilibrium_profit(Strategy::BP, p).profit;
      const double bs = equilibrium_profit(Strategy::BS, p).profit;
      CHECK(cell.winner == (bs > bp ? Strategy::BS : Strategy::BP));
      CHECK(cell.winner_profit == doctest::Approx(std::max(bp, bs)));
    }
  }
}

TEST_CASE("region winners are invariant under utility rescaling") {
  const RegionMap base =
      region_map(baseline(), Axis::q, linspace(1.2, 4.8, 7), Axis::alpha,
                 linspace(0.1, 0.9, 5), {});
  const RegionMap scaled =
      region_map(scale_params(baseline(), 3.0), Axis::q, linspace(1.2, 4.8, 7),
                 Axis::alpha, linspace(0.1, 0.9, 5), {});
  REQUIRE(base.cells.size() == scaled.cells.size());
  for (std::size_t i = 0; i < base.cells.size(); ++i) {
    CHECK(base.cells[i].winner == scaled.cells[i].winner);
    CHECK(scaled.cells[i].winner_profit ==
          doctest::Approx(3.0 * base.cells[i].winner_profit).epsilon(1e-10));
  }
}

TEST_CASE("vehicle cost shifts every profit equally") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const double q = 1 + 4 * rng::u01_open_low(21, i, 0);
    const double alpha = 0.05 + 0.9 * rng::u01(21, i, 1);
    std::array<double, 4> low{}, high{};
    const ModelParams pl = validate_params(q, 1.3, alpha, 1, 0.2, 0.1);
    const ModelParams ph = validate_params(q, 1.3, alpha, 1, 1.8, 0.1);
    for (Strategy s : kAllStrategies) {
      low[static_cast<std::size_t>(s)] = equilibrium_profit(s, pl).profit;
      high[static_cast<std::size_t>(s)] = equilibrium_profit(s, ph).profit;
    }
    const double shift = low[0] - high[0];
    CHECK(shift == doctest::Approx(2 * (1.8 - 0.2)).epsilon(1e-12));
    for (std::size_t s = 1; s < 4; ++s) {
      CHECK(low[s] - high[s] == doctest::Approx(shift).epsilon(1e-12));
    }
  }
}

TEST_CASE("at most one subscription switch per scan line at the base upgrade") {
  const std::vector<double> grid = linspace(1.01, 5.0, 400);
  for (double alpha : {0.2, 0.5, 0.8, 0.95}) {
    const std::vector<ThresholdEstimate> switches =
        oscillation_scan(at(2, alpha), Strategy::US, Strategy::BS, grid);
    CHECK(switches.size() <= 1);
    for (const ThresholdEstimate& est : switches) {
      const ModelParams p = with_axis(at(2, alpha), Axis::q, est.value);
      CHECK(std::abs(equilibrium_profit(Strategy::US, p).profit -
                     equilibrium_profit(Strategy::BS, p).profit) <= 1e-6);
    }
  }
}

TEST_CASE("pairwise winners form at most two runs per line at the base upgrade") {
  const std::vector<double> grid = linspace(1.02, 5.0, 200);
  const Strategy pairs[6][2] = {
      {Strategy::UP, Strategy::US}, {Strategy::UP, Strategy::BP},
      {Strategy::UP, Strategy::BS}, {Strategy::US, Strategy::BP},
      {Strategy::US, Strategy::BS}, {Strategy::BP, Strategy::BS}};
  for (const auto& pair : pairs) {
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const ModelParams base = at(2, alpha);
      int flips = 0;
      int prev = -1;
      for (double q : grid) {
        const ModelParams p = with_axis(base, Axis::q, q);
        const double da = equilibrium_profit(pair[0], p).profit -
                          equilibrium_profit(pair[1], p).profit;
        const int cur = da >= 0 ? 0 : 1;
        if (prev >= 0 && cur != prev) ++flips;
        prev = cur;
      }
      INFO(to_string(pair[0]) << "/" << to_string(pair[1]) << " alpha " << alpha);
      CHECK(flips <= 2);
    }
  }
}

TEST_CASE("every reported switch point is a profit crossing") {
  // a stronger upgrade level produces a line with three switches
  const ModelParams base = validate_params(2, 2.3, 0.6965, 1, 1, 0.1);
  std::vector<double> grid(1601);
  for (int i = 0; i < 1601; ++i) grid[static_cast<std::size_t>(i)] = 1 + 4.0 * (i + 1) / 1601.0;
  const std::vector<ThresholdEstimate> switches =
      oscillation_scan(base, Strategy::US, Strategy::BS, grid);
  CHECK(switches.size() >= 3);
  for (const ThresholdEstimate& est : switches) {
    CHECK(est.hi - est.lo <= est.tol);
    const ModelParams p = with_axis(base, Axis::q, est.value);
    CHECK(std::abs(equilibrium_profit(Strategy::US, p).profit -
                   equilibrium_profit(Strategy::BS, p).profit) <= 1e-6);
  }
}

TEST_CASE("dominance verdicts") {
  SUBCASE("perpetual weakly dominates subscription at low compatibility") {
    const FrontierResult res = dominance_frontier(
        Strategy::UP, Strategy::US, at(2, 0.1), Axis::q, 1.05, 5.0);
    CHECK(res.dominance);
    CHECK(res.winner == Strategy::UP);
  }

  SUBCASE("bundled pair crosses in reliability at high compatibility") {
    const FrontierResult res = dominance_frontier(
        Strategy::BP, Strategy::BS, at(2, 0.9), Axis::q, 1.05, 5.0);
    REQUIRE_FALSE(res.dominance);
    REQUIRE(res.threshold.has_value());
    CHECK(res.threshold->value > 3.0);
    CHECK(res.threshold->value < 4.0);
  }

  SUBCASE("bundled-perpetual dominates at a strong upgrade") {
    const FrontierResult res = dominance_frontier(
        Strategy::BP, Strategy::UP, at(2, 0.9, 2.5), Axis::q, 1.05, 5.0);
    CHECK(res.dominance);
    CHECK(res.winner == Strategy::BP);
  }
}
