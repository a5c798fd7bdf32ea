/* adsgame — equilibrium pricing for vehicles with an upgradeable driving
 * add-on sold as support hardware plus software.
 *
 * C interface of the shared library. All functions return adsg_status;
 * ADSG_OK means every output argument was written. On failure,
 * adsg_last_error() returns a thread-local description of what went
 * wrong. Objects behind opaque pointers are created and released with
 * their _create/_destroy pairs and are immutable, so one instance may be
 * shared across threads.
 */

#ifndef ADSGAME_H
#define ADSGAME_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ADSG_API __declspec(dllexport)
#else
#define ADSG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adsg_status {
  ADSG_OK = 0,
  ADSG_ERR_NONFINITE = 1,
  ADSG_ERR_CONSTRAINT = 2,
  ADSG_ERR_STRATEGY_MISMATCH = 3,
  ADSG_ERR_RESTRICTED_PRICING = 4,
  ADSG_ERR_DEGENERATE = 5,
  ADSG_ERR_NO_SIGN_CHANGE = 6,
  ADSG_ERR_BUDGET_EXCEEDED = 7,
  ADSG_ERR_INVALID_ARGUMENT = 8,
  ADSG_ERR_IO = 9,
  ADSG_ERR_INTERNAL = 10
} adsg_status;

/* Hardware Unbundled/Bundled x software Perpetual/Subscription. The enum
 * order is the canonical tie-break order. */
typedef enum adsg_strategy {
  ADSG_UP = 0,
  ADSG_US = 1,
  ADSG_BP = 2,
  ADSG_BS = 3
} adsg_strategy;

typedef enum adsg_axis {
  ADSG_AXIS_Q = 0,
  ADSG_AXIS_ALPHA = 1,
  ADSG_AXIS_GAMMA = 2
} adsg_axis;

typedef enum adsg_software_mode {
  ADSG_SOFTWARE_PERPETUAL = 0,
  ADSG_SOFTWARE_SUBSCRIPTION = 1
} adsg_software_mode;

ADSG_API const char* adsg_version(void);
ADSG_API const char* adsg_status_name(adsg_status status);
/* Message of the most recent failure on this thread ("" if none). */
ADSG_API const char* adsg_last_error(void);

/* ------------------------------------------------------------------ */
/* Parameters                                                          */

typedef struct adsg_params adsg_params;

/* Validates (q, gamma, alpha, v, c_v, c_h) and derives t_h = c_h/v and
 * c = c_v + c_h. Requires q > 1, gamma > 1 + c_h/v, 0 < alpha < 1, v > 0,
 * 0 < c_v < 2v, c_h >= 0. */
ADSG_API adsg_status adsg_params_create(double q, double gamma, double alpha,
                                        double v, double c_v, double c_h,
                                        adsg_params** out);
/* Same, but admits gamma <= 1 + c_h/v (the zero-adoption regime). */
ADSG_API adsg_status adsg_params_create_relaxed(double q, double gamma,
                                                double alpha, double v,
                                                double c_v, double c_h,
                                                adsg_params** out);
ADSG_API void adsg_params_destroy(adsg_params* params);

/* Multiplies v, c_v, c_h by lambda > 0 (q, gamma, alpha, t_h unchanged). */
ADSG_API adsg_status adsg_params_scale(const adsg_params* params,
                                       double lambda, adsg_params** out);

/* Writes q, gamma, alpha, v, c_v, c_h, t_h, c in that order. */
ADSG_API adsg_status adsg_params_get(const adsg_params* params,
                                     double out_values[8]);

/* ------------------------------------------------------------------ */
/* Demand and equilibrium                                              */

#define ADSG_MAX_BEHAVIORS 8

/* Per-behavior consumer masses (each consumer class has total mass 1)
 * plus aggregate unit counts. behavior_class: 0 progressive,
 * 1 conservative. */
typedef struct adsg_demand {
  int behavior_count;
  char behavior[ADSG_MAX_BEHAVIORS][4];
  int behavior_class[ADSG_MAX_BEHAVIORS];
  double behavior_mass[ADSG_MAX_BEHAVIORS];
  double software_stage1;
  double software_stage2;
  double software_perpetual;
  double ssh_units;
  double vehicle_units;
} adsg_demand;

/* Demand and profit at explicit prices. `hardware` is ignored for the
 * bundled strategies; `vehicle` is the vehicle price (UP/US) or the
 * bundle price (BP/BS) and must not exceed 2v. Any output pointer may be
 * NULL. */
ADSG_API adsg_status adsg_demand_eval(const adsg_params* params,
                                      adsg_strategy strategy, double vehicle,
                                      double hardware, double software,
                                      adsg_demand* out_demand,
                                      double* out_profit);

/* Restricted market: bundle priced above 2v (the unbundled strategy
 * coincides with the bundled one there). */
ADSG_API adsg_status adsg_restricted_eval(const adsg_params* params,
                                          double bundle_price,
                                          double software_price,
                                          adsg_software_mode mode,
                                          adsg_demand* out_demand,
                                          double* out_profit);

/* Optimal prices and profit for one strategy. When epsilon_limit is 1 the
 * row's subscription price degenerates to an arbitrarily small value:
 * prices carry the given epsilon while profit is the epsilon -> 0 limit.
 * hardware_price is -1 for the bundled strategies. */
typedef struct adsg_equilibrium {
  adsg_strategy strategy;
  int case_id;
  int epsilon_limit;
  double vehicle_price;
  double hardware_price;
  double software_price;
  double profit;
  adsg_demand demand;
} adsg_equilibrium;

ADSG_API adsg_status adsg_equilibrium_solve(const adsg_params* params,
                                            adsg_strategy strategy,
                                            double epsilon,
                                            adsg_equilibrium* out);

/* All four strategies by descending profit (ties in enum order). Output
 * arrays may be NULL. strict_epsilon != 0 charges epsilon-limit rows
 * their worst-case O(epsilon) correction. */
ADSG_API adsg_status adsg_rank_strategies(const adsg_params* params,
                                          double epsilon, int strict_epsilon,
                                          adsg_strategy out_order[4],
                                          double out_profits[4],
                                          int out_case_ids[4]);

/* ------------------------------------------------------------------ */
/* Numeric ground truth                                                */

/* Brute-force grid search configuration; adsg_grid_spec_default() fills
 * 256 points per axis, 3 refinement rounds, shrink 0.1. threads = 0 uses
 * all hardware threads. */
typedef struct adsg_grid_spec {
  int points;
  int refine_rounds;
  double shrink;
  int top_cells;
  double budget_cells;
  unsigned threads;
} adsg_grid_spec;

ADSG_API void adsg_grid_spec_default(adsg_grid_spec* spec);

typedef struct adsg_oracle_result {
  double vehicle_price;
  double hardware_price; /* -1 for bundled strategies */
  double software_price;
  double best_profit;
  double resolution_bound; /* optimality-gap guarantee */
} adsg_oracle_result;

/* Exhaustive search over the strategy's free prices. fix_hardware /
 * fix_software, when non-NULL, pin that price (equality constraint).
 * spec may be NULL for defaults. */
ADSG_API adsg_status adsg_oracle_optimize(const adsg_params* params,
                                          adsg_strategy strategy,
                                          const adsg_grid_spec* spec,
                                          const double* fix_hardware,
                                          const double* fix_software,
                                          adsg_oracle_result* out);

/* Search over (bundle_price > 2v, software_price). */
typedef struct adsg_restricted_result {
  double bundle_price;
  double software_price;
  double best_profit;
  double resolution_bound;
} adsg_restricted_result;

ADSG_API adsg_status adsg_oracle_optimize_restricted(
    const adsg_params* params, adsg_software_mode mode,
    const adsg_grid_spec* spec, adsg_restricted_result* out);

/* Monte Carlo demand estimate: n agents per consumer class (n >= 10^4),
 * deterministic in (seed, n). Frequencies come with binomial standard
 * errors. */
typedef struct adsg_mc_result {
  int behavior_count;
  char behavior[ADSG_MAX_BEHAVIORS][4];
  int behavior_class[ADSG_MAX_BEHAVIORS];
  uint64_t behavior_count_raw[ADSG_MAX_BEHAVIORS];
  double behavior_frequency[ADSG_MAX_BEHAVIORS];
  double behavior_std_error[ADSG_MAX_BEHAVIORS];
  double software_stage1;
  double software_stage2;
  double software_perpetual;
  double ssh_units;
  double vehicle_units;
} adsg_mc_result;

ADSG_API adsg_status adsg_mc_demand(const adsg_params* params,
                                    adsg_strategy strategy, double vehicle,
                                    double hardware, double software,
                                    uint64_t n, uint64_t seed,
                                    adsg_mc_result* out);

/* ------------------------------------------------------------------ */
/* Strategy comparison                                                 */

typedef struct adsg_threshold {
  char name[128];
  double value;
  double lo, hi;  /* final bracket, width <= tol */
  double tol;
  int sign_lo, sign_hi;
} adsg_threshold;

/* Bisection on the profit difference a - b along one axis. Fails with
 * ADSG_ERR_NO_SIGN_CHANGE when the bracket ends do not straddle zero. */
ADSG_API adsg_status adsg_find_threshold(const adsg_params* params,
                                         adsg_strategy a, adsg_strategy b,
                                         adsg_axis axis, double lo, double hi,
                                         double tol, const char* name,
                                         adsg_threshold* out);

/* Threshold search with a dominance verdict fallback: when the profit
 * difference never changes sign on the scanned range, *out_dominant is 1
 * and *out_winner names the (weakly) dominant strategy. */
ADSG_API adsg_status adsg_dominance_frontier(const adsg_params* params,
                                             adsg_strategy a, adsg_strategy b,
                                             adsg_axis axis, double lo,
                                             double hi, double tol,
                                             int* out_dominant,
                                             adsg_strategy* out_winner,
                                             adsg_threshold* out_threshold);

/* Ordered q values where the winner of the (a, b) comparison flips along
 * q_grid, each refined by bisection. Writes at most capacity switches and
 * the true count to *out_count (fails with ADSG_ERR_INVALID_ARGUMENT if
 * capacity is too small). */
ADSG_API adsg_status adsg_oscillation_scan(const adsg_params* params,
                                           adsg_strategy a, adsg_strategy b,
                                           const double* q_grid, int grid_len,
                                           double tol,
                                           adsg_threshold* out_switches,
                                           int capacity, int* out_count);

/* Per-cell winner over the cross product of two parameter grids. */
typedef struct adsg_region_map adsg_region_map;

typedef struct adsg_region_cell {
  double axis1_value;
  double axis2_value;
  adsg_strategy winner;
  double winner_profit;
  double gap;
  int winner_case;
  double profits[4];  /* by strategy; NaN outside the compared subset */
  int case_ids[4];    /* -1 outside the compared subset */
} adsg_region_cell;

/* subset may be NULL (all four strategies). Cells are stored axis1-major:
 * index = i1 * n2 + i2. */
ADSG_API adsg_status adsg_region_map_compute(
    const adsg_params* params, adsg_axis axis1, const double* grid1, int n1,
    adsg_axis axis2, const double* grid2, int n2,
    const adsg_strategy* subset, int subset_len, double epsilon,
    int strict_epsilon, adsg_region_map** out);
ADSG_API int adsg_region_map_count(const adsg_region_map* map);
ADSG_API adsg_status adsg_region_map_cell(const adsg_region_map* map,
                                          int index, adsg_region_cell* out);
ADSG_API void adsg_region_map_destroy(adsg_region_map* map);

/* ------------------------------------------------------------------ */
/* Closed-form vs search cross-validation                              */

typedef struct adsg_validate_report {
  int samples;
  uint64_t seed;
  double max_shortfall;     /* worst closed_form - search value */
  double max_oracle_excess; /* worst search - closed_form value */
  int pass;
  /* worst draw */
  adsg_strategy worst_strategy;
  double worst_params[6]; /* q, gamma, alpha, v, c_v, c_h */
  double worst_closed_form;
  double worst_oracle;
  double worst_bound;
  char failure[256]; /* "" when pass */
} adsg_validate_report;

/* Draws `samples` parameter sets from the standard box (q in (1,5],
 * alpha in [0.05,0.95], t_h in [0,0.5], gamma in (1+t_h,3.5], v = c_v = 1)
 * and checks every strategy's closed form against the grid search. */
ADSG_API adsg_status adsg_validate(int samples, uint64_t seed,
                                   const adsg_grid_spec* spec,
                                   adsg_validate_report* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ADSGAME_H */
