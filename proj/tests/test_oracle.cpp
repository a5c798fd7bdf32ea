#include <cmath>

#include "doctest.h"

#include "core/closed_form.hpp"
#include "core/errors.hpp"
#include "core/oracle.hpp"
#include "core/rng.hpp"
#include "core/validate.hpp"

using namespace adsgame;

namespace {

ModelParams baseline() { return validate_params(2, 1.3, 0.6, 1, 1, 0.1); }

GridSpec light_spec() {
  GridSpec s;
  s.points = 128;
  s.refine_rounds = 2;
  s.top_cells = 2;
  return s;
}

}  // namespace

TEST_CASE("grid spec bounds are enforced") {
  const ModelParams p = baseline();
  GridSpec s = light_spec();
  s.points = 8;
  CHECK_THROWS_AS(optimize_prices(Strategy::UP, p, s), ConstraintViolation);
  s = light_spec();
  s.shrink = 1.0;
  CHECK_THROWS_AS(optimize_prices(Strategy::UP, p, s), ConstraintViolation);
  s = light_spec();
  s.budget_cells = 100;
  CHECK_THROWS_AS(optimize_prices(Strategy::UP, p, s), BudgetExceeded);
}

TEST_CASE("search matches the closed form at the baseline") {
  const ModelParams p0 = baseline();
  const GridSpec spec = light_spec();

  const OracleResult up = optimize_prices(Strategy::UP, p0, spec);
  CHECK(std::abs(up.best_profit - 2.3396739) <= up.resolution_bound);
  CHECK(up.best_prices.hardware + up.best_prices.software ==
        doctest::Approx(1.35).epsilon(1e-2));
  CHECK(up.best_prices.vehicle == 2.0);

  // the subscription optimum degenerates to a free subscription here and
  // approaches the same value
  const OracleResult us = optimize_prices(Strategy::US, p0, spec);
  CHECK(std::abs(us.best_profit - 2.3396739) <= us.resolution_bound);

  const OracleResult bp = optimize_prices(Strategy::BP, p0, spec);
  CHECK(std::abs(bp.best_profit - 2.2870994) <= bp.resolution_bound);

  const OracleResult bs = optimize_prices(Strategy::BS, p0, spec);
  CHECK(std::abs(bs.best_profit - 2.1987846) <= bs.resolution_bound);
  CHECK(bs.best_prices.software == doctest::Approx(0.644).epsilon(1e-2));
}

TEST_CASE("best_profit is exactly the profit at the best prices") {
  const ModelParams p0 = baseline();
  for (Strategy s : kAllStrategies) {
    const OracleResult r = optimize_prices(s, p0, light_spec());
    CHECK(r.best_profit == profit(s, p0, r.best_prices));
    CHECK(r.resolution_bound >= 0);
  }
}

TEST_CASE("search is deterministic for any thread count") {
  const ModelParams p0 = baseline();
  GridSpec one = light_spec();
  one.threads = 1;
  GridSpec four = light_spec();
  four.threads = 4;
  const OracleResult a = optimize_prices(Strategy::US, p0, one);
  const OracleResult b = optimize_prices(Strategy::US, p0, four);
  CHECK(a.best_profit == b.best_profit);
  CHECK(a.best_prices.hardware == b.best_prices.hardware);
  CHECK(a.best_prices.software == b.best_prices.software);
}

TEST_CASE("price-equality constraints restrict the search") {
  const ModelParams p0 = baseline();
  PriceConstraints no_license;
  no_license.software = 0.0;

  // pinning the license price changes nothing for the packaged optimum
  const OracleResult up_free = optimize_prices(Strategy::UP, p0, light_spec());
  const OracleResult up_pinned =
      optimize_prices(Strategy::UP, p0, light_spec(), no_license);
  CHECK(std::abs(up_free.best_profit - up_pinned.best_profit) <=
        up_free.resolution_bound + up_pinned.resolution_bound);

  // a free bundle with no software revenue collapses to the base margin
  const OracleResult bp_pinned =
      optimize_prices(Strategy::BP, p0, light_spec(), no_license);
  CHECK(bp_pinned.best_profit == doctest::Approx(1.8).epsilon(1e-12));
  CHECK(bp_pinned.best_profit < 2.28710 - 0.4);
}

TEST_CASE("search never beats the closed form on random draws") {
  const GridSpec spec = light_spec();
  for (std::uint64_t i = 0; i < 6; ++i) {
    const ModelParams p = draw_params(99, i);
    for (Strategy s : kAllStrategies) {
      const double closed = equilibrium_profit(s, p).profit;
      const OracleResult orc = optimize_prices(s, p, spec);
      CHECK(closed >= orc.best_profit - orc.resolution_bound);
      CHECK(orc.best_profit - closed <= 1e-6);
    }
  }
}

TEST_CASE("restricted-market search stays below the full-market optimum") {
  const ModelParams p0 = baseline();
  const RestrictedOracleResult r =
      optimize_restricted(p0, SoftwareMode::perpetual, light_spec());
  CHECK(r.bundle_price > 2.0);
  CHECK(r.best_profit < 2.2870994);
}

TEST_CASE("agent simulation reproduces analytic masses") {
  const ModelParams p0 = baseline();
  const std::uint64_t n = 200000;

  SUBCASE("unbundled-perpetual at the reference prices") {
    const PriceDecision prices = PriceDecision::up(2, 1.35, 0);
    const McDemand mc = mc_demand(Strategy::UP, p0, prices, n, 7);
    const DemandProfile d = demand_profile(Strategy::UP, p0, prices);
    for (const McBehaviorStat& b : mc.behaviors) {
      const double mass = d.mass(b.behavior, b.consumer_class);
      const double se = binomial_std_error(mass, n);
      CHECK(std::abs(b.frequency - mass) <= 4 * se + 1e-12);
    }
  }

  SUBCASE("bundled-subscription stage-2 aggregate") {
    const PriceDecision prices = PriceDecision::bs(2, 0.644);
    const McDemand mc = mc_demand(Strategy::BS, p0, prices, n, 11);
    const DemandProfile d = demand_profile(Strategy::BS, p0, prices);
    const double se2 = 2 * binomial_std_error(d.software_stage2 / 2, n);
    CHECK(std::abs(mc.software_stage2 - d.software_stage2) <= 4 * se2);
  }

  SUBCASE("prohibitive prices produce exact zeros") {
    const McDemand mc =
        mc_demand(Strategy::US, p0, PriceDecision::us(2, 40, 40), 10000, 3);
    CHECK(mc.software_stage1 == 0.0);
    CHECK(mc.software_stage2 == 0.0);
    for (const McBehaviorStat& b : mc.behaviors) {
      if (b.behavior != Behavior::NNN) CHECK(b.count == 0);
    }
  }
}

TEST_CASE("agent simulation is deterministic in the seed") {
  const ModelParams p0 = baseline();
  const PriceDecision prices = PriceDecision::bs(2, 0.644);
  const McDemand a = mc_demand(Strategy::BS, p0, prices, 50000, 5, 1);
  const McDemand b = mc_demand(Strategy::BS, p0, prices, 50000, 5, 4);
  REQUIRE(a.behaviors.size() == b.behaviors.size());
  for (std::size_t i = 0; i < a.behaviors.size(); ++i) {
    CHECK(a.behaviors[i].count == b.behaviors[i].count);
  }
  const McDemand c = mc_demand(Strategy::BS, p0, prices, 50000, 6);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.behaviors.size(); ++i) {
    any_diff = any_diff || a.behaviors[i].count != c.behaviors[i].count;
  }
  CHECK(any_diff);
}

TEST_CASE("simulation input bounds") {
  const ModelParams p0 = baseline();
  CHECK_THROWS_AS(
      mc_demand(Strategy::UP, p0, PriceDecision::up(2, 1, 0), 9999, 1),
      ConstraintViolation);
  CHECK_THROWS_AS(
      mc_demand(Strategy::UP, p0, PriceDecision::up(2.5, 1, 0), 10000, 1),
      RestrictedPricing);
}

TEST_CASE("standard errors follow the binomial law exactly") {
  for (double p : {0.1, 0.27174, 0.5}) {
    CHECK(binomial_std_error(p, 1000000) == std::sqrt(p * (1 - p) / 1e6));
    CHECK(binomial_std_error(p, 2000000) ==
          doctest::Approx(binomial_std_error(p, 1000000) / std::sqrt(2.0))
              .epsilon(1e-15));
  }
}

TEST_CASE("bisection locates the bundled switch point") {
  const ModelParams base = validate_params(2, 1.3, 0.9, 1, 1, 0.1);

  // signs at the bracket ends, frozen from direct table evaluation
  const ModelParams q3 = with_axis(base, Axis::q, 3.0);
  const ModelParams q4 = with_axis(base, Axis::q, 4.0);
  CHECK(equilibrium_profit(Strategy::BP, q3).profit ==
        doctest::Approx(3.066098).epsilon(1e-4));
  CHECK(equilibrium_profit(Strategy::BS, q3).profit ==
        doctest::Approx(3.064524).epsilon(1e-4));
  CHECK(equilibrium_profit(Strategy::BP, q4).profit ==
        doctest::Approx(3.821742).epsilon(1e-4));
  CHECK(equilibrium_profit(Strategy::BS, q4).profit ==
        doctest::Approx(3.836781).epsilon(1e-4));

  const ThresholdEstimate est =
      find_threshold(Strategy::BP, Strategy::BS, base, Axis::q, 3, 4, 1e-6);
  CHECK(est.hi - est.lo <= 1e-6);
  CHECK(est.sign_lo == 1);
  CHECK(est.sign_hi == -1);
  CHECK(est.value > 3.0);
  CHECK(est.value < 4.0);

  // invariant to the bracket choice
  const ThresholdEstimate wide =
      find_threshold(Strategy::BP, Strategy::BS, base, Axis::q, 2.5, 4.5, 1e-6);
  CHECK(std::abs(wide.value - est.value) <= 2e-6);

  // the reported point really is a crossing
  const ModelParams at_value = with_axis(base, Axis::q, est.value);
  CHECK(std::abs(equilibrium_profit(Strategy::BP, at_value).profit -
                 equilibrium_profit(Strategy::BS, at_value).profit) <= 1e-6);
}

TEST_CASE("bisection refuses brackets without a sign change") {
  // below the subscription viability threshold the two profits coincide
  const ModelParams base = validate_params(2, 1.3, 0.1, 1, 1, 0.1);
  CHECK_THROWS_AS(
      find_threshold(Strategy::UP, Strategy::US, base, Axis::q, 1.2, 4, 1e-6),
      NoSignChange);
}
