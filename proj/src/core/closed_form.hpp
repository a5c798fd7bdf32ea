#pragma once

#include "core/demand.hpp"
#include "core/params.hpp"
#include "core/prices.hpp"
#include "core/strategy.hpp"

namespace adsgame {

// One strategy's optimal prices and profit.
//
// For rows where the optimal subscription price degenerates to an
// arbitrarily small positive value (epsilon_limit = true), `prices`
// carries the configured epsilon while `profit` is the epsilon -> 0
// supremum; the two agree up to O(epsilon) with the coefficient bounded
// by (3 + alpha) / 2.
struct EquilibriumResult {
  Strategy strategy = Strategy::UP;
  int case_id = 0;
  PriceDecision prices;
  double profit = 0;
  DemandProfile demand;
  bool epsilon_limit = false;
};

// Lightweight equilibrium value (no demand profile), for sweeps.
struct EquilibriumValue {
  int case_id = 0;
  double profit = 0;
  bool epsilon_limit = false;
};

// Row of the pricing table whose optimality conditions hold at `params`.
// Case numbering: UP 1-3, US 1-4, BP 1-3, BS 1-2. On a boundary where two
// rows' conditions meet, the row listing the weak inequality is returned.
int case_select(Strategy strategy, const ModelParams& params);

// Equilibrium profit in the epsilon -> 0 convention. Candidate rows are
// priced out through the demand model and the best one wins, so exact
// boundary ties between rows resolve to the higher (equal) profit.
EquilibriumValue equilibrium_profit(Strategy strategy,
                                    const ModelParams& params);

// Full equilibrium with demand recomputed at the reported prices.
// Requires 0 < epsilon <= 1e-3.
EquilibriumResult equilibrium(Strategy strategy, const ModelParams& params,
                              double epsilon = 1e-6);

// Case-threshold and row-price formulas, exposed for checks and sweeps.
namespace table {

// Unbundled-perpetual.
double up_gamma_bar(const ModelParams& p);  // 1 + t_h
double up_q1(const ModelParams& p);
double up_q2(const ModelParams& p);

// Unbundled-subscription.
double us_alpha_bar(const ModelParams& p);  // 2g - 2 sqrt(g(g+1)) + 1
double us_q1(const ModelParams& p);
double us_q2(const ModelParams& p);
double us_q3(const ModelParams& p);
double us_q4(const ModelParams& p);

// Bundled-perpetual.
double bp_alpha_bar(const ModelParams& p);  // g / (g + 1)
double bp_q1(const ModelParams& p);
double bp_q2(const ModelParams& p);
double bp_q3(const ModelParams& p);  // defined for alpha > bp_alpha_bar
double bp_software_price(const ModelParams& p, int case_id);

// Bundled-subscription.
double bs_alpha_bar(const ModelParams& p);  // 1 / (2 (g - 2)), g > 2 only
double bs_q_bar(const ModelParams& p);      // throws Degenerate on its pole
double bs_price_low(const ModelParams& p);  // optimal below bs_q_bar
double bs_price_high(const ModelParams& p); // optimal above bs_q_bar

}  // namespace table

}  // namespace adsgame
