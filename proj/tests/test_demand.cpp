#include <cmath>

#include "doctest.h"

#include "core/demand.hpp"
#include "core/errors.hpp"
#include "core/rng.hpp"

using namespace adsgame;

namespace {

ModelParams baseline() { return validate_params(2, 1.3, 0.6, 1, 1, 0.1); }

double utility_of(const std::vector<BehaviorUtility>& u, Behavior b) {
  for (const auto& e : u) {
    if (e.behavior == b) return e.utility;
  }
  FAIL("behavior not present");
  return 0;
}

// Random-but-reproducible draws inside the valid box.
ModelParams random_params(std::uint64_t i) {
  const double th = 0.5 * rng::u01(42, i, 0);
  const double q = 1 + 4 * rng::u01_open_low(42, i, 1);
  const double g = (1 + th) + (2.5 - th) * rng::u01_open_low(42, i, 2);
  const double a = 0.05 + 0.9 * rng::u01(42, i, 3);
  return validate_params(q, g, a, 1, 1, th);
}

PriceDecision random_prices(Strategy s, const ModelParams& p, std::uint64_t i) {
  const double cap = (1 + p.gamma) * p.q * p.v;
  const double software = cap * rng::u01(43, i, 0);
  const double hardware = is_bundled(s) ? 0 : cap * rng::u01(43, i, 1);
  const double vehicle = 2 * p.v * rng::u01(43, i, 2);
  return PriceDecision::make(s, vehicle, hardware, software);
}

double class_sum(const DemandProfile& d, ConsumerClass c) {
  double total = 0;
  for (int i = 0; i < d.entry_count; ++i) {
    if (d.entries[static_cast<std::size_t>(i)].consumer_class == c) {
      total += d.entries[static_cast<std::size_t>(i)].mass;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("two-stage utilities match their closed forms") {
  const ModelParams p = baseline();
  const PriceDecision up = PriceDecision::up(2, 1.35, 0);

  auto u1 = behavior_utilities(Strategy::UP, p, up, 1.0);
  CHECK(utility_of(u1, Behavior::PPH) == doctest::Approx(1.25).epsilon(1e-12));

  auto u0 = behavior_utilities(Strategy::UP, p, up, 0.0);
  CHECK(utility_of(u0, Behavior::PPH) == doctest::Approx(-3.35).epsilon(1e-12));
  CHECK(utility_of(u0, Behavior::NNN) == doctest::Approx(0.0));

  auto ubs = behavior_utilities(Strategy::BS, p, PriceDecision::bs(2, 0.644), 0.5);
  CHECK(utility_of(ubs, Behavior::SS) == doctest::Approx(-0.988).epsilon(1e-12));
}

TEST_CASE("mismatched price tags are rejected") {
  const ModelParams p = baseline();
  const PriceDecision up = PriceDecision::up(2, 1.35, 0);
  CHECK_THROWS_AS(behavior_utilities(Strategy::US, p, up, 0.5),
                  StrategyMismatch);
  CHECK_THROWS_AS(demand_profile(Strategy::BP, p, up), StrategyMismatch);
  CHECK_THROWS_AS(profit(Strategy::BS, p, up), StrategyMismatch);
}

TEST_CASE("indifference points reproduce the closed forms") {
  const ModelParams p = baseline();

  SUBCASE("unbundled-perpetual") {
    const ThresholdSet t =
        indifference_points(Strategy::UP, p, PriceDecision::up(2, 1.35, 0));
    CHECK(t.raw_12 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.raw_23 == doctest::Approx(2.35 / 2.6).epsilon(1e-12));
    CHECK(t.raw_13 == doctest::Approx(3.35 / 4.6).epsilon(1e-12));
    CHECK_FALSE(t.has_34);
  }

  SUBCASE("the upgrade-only threshold is price independent for perpetual") {
    for (double ph : {0.0, 0.7, 2.0}) {
      const ThresholdSet t =
          indifference_points(Strategy::UP, p, PriceDecision::up(2, ph, 0.2));
      CHECK(t.raw_12 == doctest::Approx(0.5).epsilon(1e-15));
    }
  }

  SUBCASE("bundled-perpetual re-entry threshold equals the delay one") {
    const ThresholdSet t =
        indifference_points(Strategy::BP, p, PriceDecision::bp(2, 0.3));
    CHECK(t.has_34);
    CHECK(t.raw_23 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t.raw_34 == t.raw_23);
    CHECK(t.raw_12 == doctest::Approx(0.5).epsilon(1e-15));
  }

  SUBCASE("clamping") {
    const ThresholdSet t =
        indifference_points(Strategy::US, p, PriceDecision::us(2, 9, 9));
    CHECK(t.raw_12 > 1);
    CHECK(t.clamped_12 == 1.0);
    CHECK(t.clamped_23 == 1.0);
  }
}

TEST_CASE("demand masses at reference prices") {
  const ModelParams p = baseline();

  SUBCASE("unbundled-perpetual, no-delay regime") {
    const PriceDecision prices = PriceDecision::up(2, 1.35, 0);
    const DemandProfile d = demand_profile(Strategy::UP, p, prices);
    CHECK(d.mass(Behavior::PPH, ConsumerClass::progressive) ==
          doctest::Approx(1 - 3.35 / 4.6).epsilon(1e-12));
    CHECK(d.mass(Behavior::PDP, ConsumerClass::progressive) == 0.0);
    CHECK(d.mass(Behavior::PDN, ConsumerClass::progressive) == 0.0);
    CHECK(d.ssh_units == doctest::Approx(1 - 3.35 / 4.6).epsilon(1e-12));
    CHECK(d.vehicle_units == 2.0);
  }

  SUBCASE("prohibitive prices empty the add-on market exactly") {
    for (Strategy s : kAllStrategies) {
      const PriceDecision prices = PriceDecision::make(s, 2, is_bundled(s) ? 0 : 50, 50);
      const DemandProfile d = demand_profile(s, p, prices);
      CHECK(d.software_stage1 == 0.0);
      CHECK(d.software_stage2 == 0.0);
      CHECK(d.software_perpetual == 0.0);
      CHECK(d.vehicle_units == 2.0);
    }
  }

  SUBCASE("bundled-subscription re-entry mass") {
    const DemandProfile d =
        demand_profile(Strategy::BS, p, PriceDecision::bs(2, 0.644));
    const double t34 = 1.644 / 2.6;
    CHECK(d.mass(Behavior::NS, ConsumerClass::conservative) ==
          doctest::Approx(0.6 * (1 - t34)).epsilon(1e-12));
    CHECK(d.software_stage2 ==
          doctest::Approx(d.mass(Behavior::SS, ConsumerClass::progressive) +
                          d.mass(Behavior::DS, ConsumerClass::progressive) +
                          d.mass(Behavior::NS, ConsumerClass::conservative))
              .epsilon(1e-12));
  }
}

TEST_CASE("profit matches the revenue identities at reference prices") {
  const ModelParams p = baseline();

  // hardware margin times adopters plus full vehicle margin
  CHECK(profit(Strategy::UP, p, PriceDecision::up(2, 1.35, 0)) ==
        doctest::Approx((1 - 3.35 / 4.6) * 1.25 + 2.0).epsilon(1e-12));

  // zero add-on demand leaves the base margins only
  CHECK(profit(Strategy::UP, p, PriceDecision::up(2, 50, 50)) ==
        doctest::Approx(2 * (2 - 1)).epsilon(1e-15));
  CHECK(profit(Strategy::BP, p, PriceDecision::bp(2, 50)) ==
        doctest::Approx(2 * (2 - 1.1)).epsilon(1e-15));

  CHECK(profit(Strategy::BS, p, PriceDecision::bs(2, 0.644)) ==
        doctest::Approx(2.198785).epsilon(1e-6));
}

TEST_CASE("subscription revenue counts stage-1 payments of later cancellers") {
  const ModelParams p = baseline();
  const PriceDecision prices = PriceDecision::us(2, 0.3, 0.2);
  const DemandProfile d = demand_profile(Strategy::US, p, prices);
  const double pss = d.mass(Behavior::PSS, ConsumerClass::progressive);
  const double psn = d.mass(Behavior::PSN, ConsumerClass::progressive);
  const double pds = d.mass(Behavior::PDS, ConsumerClass::progressive);
  const double pdn = d.mass(Behavior::PDN, ConsumerClass::progressive);
  REQUIRE(psn > 0);  // the point of the check: cancellers exist and still pay once
  const double expected = (2 * pss + psn + pds) * 0.2 +
                          (pss + psn + pds + pdn) * (0.3 - 0.1) + 2 * (2 - 1);
  CHECK(profit(Strategy::US, p, prices) ==
        doctest::Approx(expected).epsilon(1e-13));
  CHECK(d.software_stage1 == doctest::Approx(pss + psn).epsilon(1e-13));
}

TEST_CASE("slopes of the stage-1 plans are strictly ordered") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const ModelParams p = random_params(i);
    for (Strategy s : kAllStrategies) {
      const PriceDecision prices = random_prices(s, p, i);
      const auto u0 = behavior_utilities(s, p, prices, 0.0);
      const auto u1 = behavior_utilities(s, p, prices, 1.0);
      REQUIRE(u0.size() >= 3);
      const double slope_adopt = u1[0].utility - u0[0].utility;
      const double slope_delay = u1[1].utility - u0[1].utility;
      const double slope_never = u1[2].utility - u0[2].utility;
      CHECK(slope_adopt > slope_delay);
      CHECK(slope_delay > slope_never);
      CHECK(slope_never == 0.0);
    }
  }
}

TEST_CASE("per-class masses always sum to one") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const ModelParams p = random_params(i);
    for (Strategy s : kAllStrategies) {
      const DemandProfile d = demand_profile(s, p, random_prices(s, p, i));
      CHECK(class_sum(d, ConsumerClass::progressive) ==
            doctest::Approx(1.0).epsilon(1e-12));
      CHECK(class_sum(d, ConsumerClass::conservative) ==
            doctest::Approx(1.0).epsilon(1e-12));
      for (int k = 0; k < d.entry_count; ++k) {
        CHECK(d.entries[static_cast<std::size_t>(k)].mass >= 0.0);
      }
    }
  }
}

TEST_CASE("raising an add-on price never raises add-on demand") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const ModelParams p = random_params(i);
    for (Strategy s : kAllStrategies) {
      const PriceDecision base = random_prices(s, p, i);
      const DemandProfile d0 = demand_profile(s, p, base);

      PriceDecision higher_software = base;
      higher_software.software = base.software + 0.25 * p.v;
      const DemandProfile d1 = demand_profile(s, p, higher_software);
      CHECK(d1.software_stage1 <= d0.software_stage1 + 1e-12);
      CHECK(d1.software_stage2 <= d0.software_stage2 + 1e-12);
      CHECK(d1.software_perpetual <= d0.software_perpetual + 1e-12);
      CHECK(d1.ssh_units <= d0.ssh_units + 1e-12);

      if (!is_bundled(s)) {
        PriceDecision higher_hardware = base;
        higher_hardware.hardware = base.hardware + 0.25 * p.v;
        const DemandProfile d2 = demand_profile(s, p, higher_hardware);
        CHECK(d2.software_stage1 <= d0.software_stage1 + 1e-12);
        CHECK(d2.ssh_units <= d0.ssh_units + 1e-12);
      }
    }
  }
}

TEST_CASE("full-market precondition is enforced") {
  const ModelParams p = baseline();
  CHECK_THROWS_AS(demand_profile(Strategy::UP, p, PriceDecision::up(2.5, 1, 0)),
                  RestrictedPricing);
  CHECK_THROWS_AS(profit(Strategy::BS, p, PriceDecision::bs(2.01, 0.5)),
                  RestrictedPricing);
  CHECK_NOTHROW(profit(Strategy::UP, p, PriceDecision::up(2.0, 1, 0)));
}

TEST_CASE("restricted market") {
  const ModelParams p = baseline();

  SUBCASE("rejects full-market bundle prices") {
    CHECK_THROWS_AS(
        restricted_demand_profit(p, 2.0, 0.5, SoftwareMode::perpetual),
        ConstraintViolation);
  }

  SUBCASE("a bundle above the best possible surplus sells nothing") {
    const auto [d, value] =
        restricted_demand_profit(p, 10.0, 0.0, SoftwareMode::perpetual);
    CHECK(d.vehicle_units == 0.0);
    CHECK(value == 0.0);
  }

  SUBCASE("approaches the full-market value as the bundle price drops to 2v") {
    const double ps = 1.0;
    const double delta = 1e-7;
    const auto [d, value] =
        restricted_demand_profit(p, 2 + delta, ps, SoftwareMode::perpetual);
    const DemandProfile full =
        demand_profile(Strategy::BP, p, PriceDecision::bp(2, ps));
    const double full_profit = profit(Strategy::BP, p, PriceDecision::bp(2, ps));
    // the restricted market loses the conservative re-entrants and the
    // base margin of everyone who skips the add-on
    const double lost_reentry =
        full.mass(Behavior::NP, ConsumerClass::conservative) * ps;
    const double lost_margin = (2 - d.vehicle_units) * (2 - p.c);
    CHECK(value == doctest::Approx(full_profit - lost_reentry - lost_margin)
                       .epsilon(1e-5));
  }

  SUBCASE("subscription mode collects stage-wise payments") {
    const auto [d, value] =
        restricted_demand_profit(p, 2.5, 0.4, SoftwareMode::subscription);
    const double adopt = d.mass(Behavior::PH, ConsumerClass::progressive);
    const double dp = d.mass(Behavior::DP, ConsumerClass::progressive);
    const double pn = d.mass(Behavior::PN, ConsumerClass::progressive);
    const double buyers = adopt + dp + pn;
    CHECK(d.vehicle_units == doctest::Approx(buyers).epsilon(1e-13));
    CHECK(value ==
          doctest::Approx((adopt + 0.6 * adopt + dp) * 0.4 +
                          (2.5 - p.c) * buyers)
              .epsilon(1e-12));
  }
}

TEST_CASE("deferred software payments vanish with a packaged sale") {
  const ModelParams p = baseline();
  // low hardware price so the delay window is non-empty
  const PriceDecision packaged = PriceDecision::up(2, 0.2325, 0);
  CHECK(delayed_payment_mass(Strategy::UP, p, packaged) == 0.0);
  const PriceDecision split = PriceDecision::up(2, 0.1, 0.1325);
  CHECK(delayed_payment_mass(Strategy::UP, p, split) > 0.0);
}
