#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "core/behavior.hpp"
#include "core/params.hpp"
#include "core/prices.hpp"
#include "core/strategy.hpp"

namespace adsgame {

// Indifference points between adjacent behaviors on the perceived-
// reliability axis. Subscripts: 1 = use the add-on in both stages,
// 2 = delay to stage 2, 3 = never, 4 = conservative re-entry (bundled
// strategies only; theta_34 coincides with theta_23).
struct ThresholdSet {
  double raw_12 = 0, raw_23 = 0, raw_13 = 0, raw_34 = 0;
  double clamped_12 = 0, clamped_23 = 0, clamped_13 = 0, clamped_34 = 0;
  bool has_34 = false;
};

ThresholdSet indifference_points(Strategy strategy, const ModelParams& params,
                                 const PriceDecision& prices);

struct BehaviorMass {
  Behavior behavior;
  ConsumerClass consumer_class;
  double mass;
};

// Per-behavior consumer masses plus aggregate unit counts. Each consumer
// class has total mass 1; behavior masses are reported per class.
struct DemandProfile {
  Strategy strategy = Strategy::UP;
  bool restricted = false;

  std::array<BehaviorMass, 8> entries{};
  int entry_count = 0;

  double software_stage1 = 0;    // licenses sold / subscriptions active in stage 1
  double software_stage2 = 0;    // licenses sold / subscriptions active in stage 2
  double software_perpetual = 0; // perpetual licenses over both stages
  double ssh_units = 0;
  double vehicle_units = 0;

  void add(Behavior b, ConsumerClass c, double mass) {
    entries[static_cast<std::size_t>(entry_count++)] = {b, c, mass};
  }
  // Mass of one (behavior, class) entry; 0 if absent.
  double mass(Behavior b, ConsumerClass c) const;
};

struct BehaviorUtility {
  Behavior behavior;
  double utility;
};

// Two-stage expected utilities of the stage-1 plans (and, for bundled
// strategies, the conservative stage-2 re-entry plan) at perceived
// reliability theta. Utilities are linear in theta.
std::vector<BehaviorUtility> behavior_utilities(Strategy strategy,
                                                const ModelParams& params,
                                                const PriceDecision& prices,
                                                double theta);

// Full-market demand (vehicle or bundle price at most 2v). Throws
// RestrictedPricing when the full-market precondition fails.
DemandProfile demand_profile(Strategy strategy, const ModelParams& params,
                             const PriceDecision& prices);

// Manufacturer profit at the given prices under full-market pricing.
double profit(Strategy strategy, const ModelParams& params,
              const PriceDecision& prices);

// Mass of consumers whose first software payment lands in stage 2 at these
// prices (zero whenever the software price is zero, as with a packaged
// hardware+license sale).
double delayed_payment_mass(Strategy strategy, const ModelParams& params,
                            const PriceDecision& prices);

// Restricted market: vehicle/bundle priced above its two-stage base
// utility 2v, so only consumers planning to use the add-on buy anything
// and the unbundled strategy coincides with the bundled one. Throws
// ConstraintViolation if bundle_price <= 2v.
std::pair<DemandProfile, double> restricted_demand_profit(
    const ModelParams& params, double bundle_price, double software_price,
    SoftwareMode mode);

}  // namespace adsgame
