#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/behavior.hpp"
#include "core/params.hpp"
#include "core/prices.hpp"
#include "core/strategy.hpp"

namespace adsgame {

// Brute-force grid search configuration. `points` samples per free price
// axis, then `refine_rounds` passes re-grid a window shrunk by `shrink`
// around the best `top_cells` cells of the previous pass.
struct GridSpec {
  int points = 256;
  int refine_rounds = 3;
  double shrink = 0.1;
  int top_cells = 3;
  double budget_cells = 1e9;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::optional<double> software_hi;
  std::optional<double> hardware_hi;
};

// Optional price-equality constraints for constrained searches.
struct PriceConstraints {
  std::optional<double> software;
  std::optional<double> hardware;
};

struct OracleResult {
  PriceDecision best_prices;
  double best_profit = 0;
  // Optimality gap guarantee from the final grid pitch and a Lipschitz
  // bound of 4 units of demand per unit price on each free axis.
  double resolution_bound = 0;
};

// Exhaustive grid search over the strategy's software-side prices. The
// vehicle (or bundle) price enters profit linearly with price-independent
// demand, so its inner maximization is exact at the full-market cap 2v;
// pricing above the cap is handled by optimize_restricted. Throws
// BudgetExceeded when the cell count would exceed the configured budget.
OracleResult optimize_prices(Strategy strategy, const ModelParams& params,
                             const GridSpec& spec = {},
                             const PriceConstraints& constraints = {});

struct RestrictedOracleResult {
  double bundle_price = 0;
  double software_price = 0;
  double best_profit = 0;
  double resolution_bound = 0;
};

// Grid search over the restricted market (bundle price above 2v).
RestrictedOracleResult optimize_restricted(const ModelParams& params,
                                           SoftwareMode mode,
                                           const GridSpec& spec = {});

// Monte Carlo demand estimate: n simulated agents per consumer class,
// theta ~ U[0,1], stage-1 plan by utility maximization (ties go to the
// higher-usage plan), stage-2 compatibility redraw with probability alpha
// and plan revision along the strategy's allowed transitions.
struct McBehaviorStat {
  Behavior behavior;
  ConsumerClass consumer_class;
  std::uint64_t count = 0;
  double frequency = 0;
  double std_error = 0;
};

struct McDemand {
  Strategy strategy = Strategy::UP;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::vector<McBehaviorStat> behaviors;
  double software_stage1 = 0;
  double software_stage2 = 0;
  double software_perpetual = 0;
  double ssh_units = 0;
  double vehicle_units = 0;
};

McDemand mc_demand(Strategy strategy, const ModelParams& params,
                   const PriceDecision& prices, std::uint64_t n,
                   std::uint64_t seed, unsigned threads = 0);

// sqrt(p (1-p) / n); reported per estimated behavior frequency.
double binomial_std_error(double p, std::uint64_t n);

// Bisection-located switching point of the closed-form profit difference
// pi_a - pi_b along one parameter axis.
struct ThresholdEstimate {
  std::string name;
  double value = 0;
  double lo = 0, hi = 0;
  double tol = 0;
  int sign_lo = 0, sign_hi = 0;
};

// Requires opposite (strict) signs of the profit difference at the
// bracket ends; throws NoSignChange otherwise. The returned bracket has
// width <= tol and |pi_a - pi_b| <= 1e-6 at the reported value.
ThresholdEstimate find_threshold(Strategy a, Strategy b,
                                 const ModelParams& base, Axis axis,
                                 double lo, double hi, double tol = 1e-6,
                                 const std::string& name = "");

}  // namespace adsgame
