#include "adsgame.h"

#include <cstring>
#include <string>

#include "core/analysis.hpp"
#include "core/closed_form.hpp"
#include "core/demand.hpp"
#include "core/errors.hpp"
#include "core/lemmas.hpp"
#include "core/oracle.hpp"
#include "core/params.hpp"
#include "core/validate.hpp"

using namespace adsgame;

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
adsg_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return ADSG_OK;
  } catch (const NonFinite& e) {
    set_error(e.what());
    return ADSG_ERR_NONFINITE;
  } catch (const ConstraintViolation& e) {
    set_error(e.what());
    return ADSG_ERR_CONSTRAINT;
  } catch (const StrategyMismatch& e) {
    set_error(e.what());
    return ADSG_ERR_STRATEGY_MISMATCH;
  } catch (const RestrictedPricing& e) {
    set_error(e.what());
    return ADSG_ERR_RESTRICTED_PRICING;
  } catch (const Degenerate& e) {
    set_error(e.what());
    return ADSG_ERR_DEGENERATE;
  } catch (const NoSignChange& e) {
    set_error(e.what());
    return ADSG_ERR_NO_SIGN_CHANGE;
  } catch (const BudgetExceeded& e) {
    set_error(e.what());
    return ADSG_ERR_BUDGET_EXCEEDED;
  } catch (const IoFailure& e) {
    set_error(e.what());
    return ADSG_ERR_IO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return ADSG_ERR_INTERNAL;
  }
}

adsg_status invalid(const char* msg) {
  set_error(msg);
  return ADSG_ERR_INVALID_ARGUMENT;
}

Strategy cpp_strategy(adsg_strategy s) { return static_cast<Strategy>(s); }
adsg_strategy c_strategy(Strategy s) {
  return static_cast<adsg_strategy>(static_cast<int>(s));
}
Axis cpp_axis(adsg_axis a) { return static_cast<Axis>(a); }

PriceDecision make_prices(Strategy s, double vehicle, double hardware,
                          double software) {
  return PriceDecision::make(s, vehicle, is_bundled(s) ? 0 : hardware,
                             software);
}

void fill_demand(const DemandProfile& d, adsg_demand* out) {
  out->behavior_count = d.entry_count;
  for (int i = 0; i < d.entry_count; ++i) {
    const BehaviorMass& e = d.entries[static_cast<std::size_t>(i)];
    std::snprintf(out->behavior[i], sizeof out->behavior[i], "%s",
                  to_string(e.behavior));
    out->behavior_class[i] = static_cast<int>(e.consumer_class);
    out->behavior_mass[i] = e.mass;
  }
  out->software_stage1 = d.software_stage1;
  out->software_stage2 = d.software_stage2;
  out->software_perpetual = d.software_perpetual;
  out->ssh_units = d.ssh_units;
  out->vehicle_units = d.vehicle_units;
}

void fill_threshold(const ThresholdEstimate& est, adsg_threshold* out) {
  std::snprintf(out->name, sizeof out->name, "%s", est.name.c_str());
  out->value = est.value;
  out->lo = est.lo;
  out->hi = est.hi;
  out->tol = est.tol;
  out->sign_lo = est.sign_lo;
  out->sign_hi = est.sign_hi;
}

GridSpec cpp_spec(const adsg_grid_spec* spec) {
  GridSpec g;
  if (spec) {
    g.points = spec->points;
    g.refine_rounds = spec->refine_rounds;
    g.shrink = spec->shrink;
    g.top_cells = spec->top_cells;
    g.budget_cells = spec->budget_cells;
    g.threads = spec->threads;
  }
  return g;
}

}  // namespace

struct adsg_params {
  ModelParams value;
};

struct adsg_region_map {
  RegionMap value;
};

extern "C" {

const char* adsg_version(void) { return "1.0.0"; }

const char* adsg_status_name(adsg_status status) {
  switch (status) {
    case ADSG_OK: return "ok";
    case ADSG_ERR_NONFINITE: return "non-finite input";
    case ADSG_ERR_CONSTRAINT: return "constraint violation";
    case ADSG_ERR_STRATEGY_MISMATCH: return "strategy mismatch";
    case ADSG_ERR_RESTRICTED_PRICING: return "restricted pricing";
    case ADSG_ERR_DEGENERATE: return "degenerate case conditions";
    case ADSG_ERR_NO_SIGN_CHANGE: return "no sign change";
    case ADSG_ERR_BUDGET_EXCEEDED: return "budget exceeded";
    case ADSG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ADSG_ERR_IO: return "io failure";
    case ADSG_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* adsg_last_error(void) { return g_last_error.c_str(); }

adsg_status adsg_params_create(double q, double gamma, double alpha, double v,
                               double c_v, double c_h, adsg_params** out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] {
    *out = new adsg_params{validate_params(q, gamma, alpha, v, c_v, c_h)};
  });
}

adsg_status adsg_params_create_relaxed(double q, double gamma, double alpha,
                                       double v, double c_v, double c_h,
                                       adsg_params** out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] {
    *out = new adsg_params{validate_params(q, gamma, alpha, v, c_v, c_h,
                                           ParamRule::allow_low_upgrade)};
  });
}

void adsg_params_destroy(adsg_params* params) { delete params; }

adsg_status adsg_params_scale(const adsg_params* params, double lambda,
                              adsg_params** out) {
  if (!params || !out) return invalid("params and out must not be NULL");
  return guarded(
      [&] { *out = new adsg_params{scale_params(params->value, lambda)}; });
}

adsg_status adsg_params_get(const adsg_params* params, double out_values[8]) {
  if (!params || !out_values) return invalid("params and out must not be NULL");
  const ModelParams& p = params->value;
  out_values[0] = p.q;
  out_values[1] = p.gamma;
  out_values[2] = p.alpha;
  out_values[3] = p.v;
  out_values[4] = p.c_v;
  out_values[5] = p.c_h;
  out_values[6] = p.t_h;
  out_values[7] = p.c;
  return ADSG_OK;
}

adsg_status adsg_demand_eval(const adsg_params* params,
                             adsg_strategy strategy, double vehicle,
                             double hardware, double software,
                             adsg_demand* out_demand, double* out_profit) {
  if (!params) return invalid("params must not be NULL");
  return guarded([&] {
    const Strategy s = cpp_strategy(strategy);
    const PriceDecision prices = make_prices(s, vehicle, hardware, software);
    if (out_demand) fill_demand(demand_profile(s, params->value, prices), out_demand);
    if (out_profit) *out_profit = profit(s, params->value, prices);
  });
}

adsg_status adsg_restricted_eval(const adsg_params* params,
                                 double bundle_price, double software_price,
                                 adsg_software_mode mode,
                                 adsg_demand* out_demand, double* out_profit) {
  if (!params) return invalid("params must not be NULL");
  return guarded([&] {
    const auto [demand, value] = restricted_demand_profit(
        params->value, bundle_price, software_price,
        mode == ADSG_SOFTWARE_PERPETUAL ? SoftwareMode::perpetual
                                        : SoftwareMode::subscription);
    if (out_demand) fill_demand(demand, out_demand);
    if (out_profit) *out_profit = value;
  });
}

adsg_status adsg_equilibrium_solve(const adsg_params* params,
                                   adsg_strategy strategy, double epsilon,
                                   adsg_equilibrium* out) {
  if (!params || !out) return invalid("params and out must not be NULL");
  return guarded([&] {
    const Strategy s = cpp_strategy(strategy);
    const EquilibriumResult eq = equilibrium(s, params->value, epsilon);
    out->strategy = c_strategy(s);
    out->case_id = eq.case_id;
    out->epsilon_limit = eq.epsilon_limit ? 1 : 0;
    out->vehicle_price = eq.prices.vehicle;
    out->hardware_price = is_bundled(s) ? -1 : eq.prices.hardware;
    out->software_price = eq.prices.software;
    out->profit = eq.profit;
    fill_demand(eq.demand, &out->demand);
  });
}

adsg_status adsg_rank_strategies(const adsg_params* params, double epsilon,
                                 int strict_epsilon,
                                 adsg_strategy out_order[4],
                                 double out_profits[4], int out_case_ids[4]) {
  if (!params) return invalid("params must not be NULL");
  return guarded([&] {
    AnalysisOptions opt;
    opt.epsilon = epsilon;
    opt.strict_epsilon = strict_epsilon != 0;
    const std::vector<RankedProfit> ranking =
        rank_strategies(params->value, opt);
    for (std::size_t i = 0; i < 4; ++i) {
      if (out_order) out_order[i] = c_strategy(ranking[i].strategy);
      if (out_profits) out_profits[i] = ranking[i].profit;
      if (out_case_ids) out_case_ids[i] = ranking[i].case_id;
    }
  });
}

void adsg_grid_spec_default(adsg_grid_spec* spec) {
  if (!spec) return;
  const GridSpec d;
  spec->points = d.points;
  spec->refine_rounds = d.refine_rounds;
  spec->shrink = d.shrink;
  spec->top_cells = d.top_cells;
  spec->budget_cells = d.budget_cells;
  spec->threads = d.threads;
}

adsg_status adsg_oracle_optimize(const adsg_params* params,
                                 adsg_strategy strategy,
                                 const adsg_grid_spec* spec,
                                 const double* fix_hardware,
                                 const double* fix_software,
                                 adsg_oracle_result* out) {
  if (!params || !out) return invalid("params and out must not be NULL");
  return guarded([&] {
    const Strategy s = cpp_strategy(strategy);
    PriceConstraints constraints;
    if (fix_hardware) constraints.hardware = *fix_hardware;
    if (fix_software) constraints.software = *fix_software;
    const OracleResult res =
        optimize_prices(s, params->value, cpp_spec(spec), constraints);
    out->vehicle_price = res.best_prices.vehicle;
    out->hardware_price = is_bundled(s) ? -1 : res.best_prices.hardware;
    out->software_price = res.best_prices.software;
    out->best_profit = res.best_profit;
    out->resolution_bound = res.resolution_bound;
  });
}

adsg_status adsg_oracle_optimize_restricted(const adsg_params* params,
                                            adsg_software_mode mode,
                                            const adsg_grid_spec* spec,
                                            adsg_restricted_result* out) {
  if (!params || !out) return invalid("params and out must not be NULL");
  return guarded([&] {
    const RestrictedOracleResult res = optimize_restricted(
        params->value,
        mode == ADSG_SOFTWARE_PERPETUAL ? SoftwareMode::perpetual
                                        : SoftwareMode::subscription,
        cpp_spec(spec));
    out->bundle_price = res.bundle_price;
    out->software_price = res.software_price;
    out->best_profit = res.best_profit;
    out->resolution_bound = res.resolution_bound;
  });
}

adsg_status adsg_mc_demand(const adsg_params* params, adsg_strategy strategy,
                           double vehicle, double hardware, double software,
                           uint64_t n, uint64_t seed, adsg_mc_result* out) {
  if (!params || !out) return invalid("params and out must not be NULL");
  return guarded([&] {
    const Strategy s = cpp_strategy(strategy);
    const McDemand mc = mc_demand(s, params->value,
                                  make_prices(s, vehicle, hardware, software),
                                  n, seed);
    out->behavior_count = static_cast<int>(mc.behaviors.size());
    for (std::size_t i = 0; i < mc.behaviors.size(); ++i) {
      const McBehaviorStat& b = mc.behaviors[i];
      std::snprintf(out->behavior[i], sizeof out->behavior[i], "%s",
                    to_string(b.behavior));
      out->behavior_class[i] = static_cast<int>(b.consumer_class);
      out->behavior_count_raw[i] = b.count;
      out->behavior_frequency[i] = b.frequency;
      out->behavior_std_error[i] = b.std_error;
    }
    out->software_stage1 = mc.software_stage1;
    out->software_stage2 = mc.software_stage2;
    out->software_perpetual = mc.software_perpetual;
    out->ssh_units = mc.ssh_units;
    out->vehicle_units = mc.vehicle_units;
  });
}

adsg_status adsg_find_threshold(const adsg_params* params, adsg_strategy a,
                                adsg_strategy b, adsg_axis axis, double lo,
                                double hi, double tol, const char* name,
                                adsg_threshold* out) {
  if (!params || !out) return invalid("params and out must not be NULL");
  return guarded([&] {
    const ThresholdEstimate est =
        find_threshold(cpp_strategy(a), cpp_strategy(b), params->value,
                       cpp_axis(axis), lo, hi, tol, name ? name : "");
    fill_threshold(est, out);
  });
}

adsg_status adsg_dominance_frontier(const adsg_params* params,
                                    adsg_strategy a, adsg_strategy b,
                                    adsg_axis axis, double lo, double hi,
                                    double tol, int* out_dominant,
                                    adsg_strategy* out_winner,
                                    adsg_threshold* out_threshold) {
  if (!params || !out_dominant || !out_winner) {
    return invalid("params, out_dominant, out_winner must not be NULL");
  }
  return guarded([&] {
    const FrontierResult res =
        dominance_frontier(cpp_strategy(a), cpp_strategy(b), params->value,
                           cpp_axis(axis), lo, hi, tol);
    *out_dominant = res.dominance ? 1 : 0;
    *out_winner = c_strategy(res.winner);
    if (out_threshold && res.threshold) fill_threshold(*res.threshold, out_threshold);
  });
}

adsg_status adsg_oscillation_scan(const adsg_params* params, adsg_strategy a,
                                  adsg_strategy b, const double* q_grid,
                                  int grid_len, double tol,
                                  adsg_threshold* out_switches, int capacity,
                                  int* out_count) {
  if (!params || !q_grid || !out_count) {
    return invalid("params, q_grid and out_count must not be NULL");
  }
  return guarded([&] {
    const std::vector<double> grid(q_grid, q_grid + grid_len);
    const std::vector<ThresholdEstimate> switches = oscillation_scan(
        params->value, cpp_strategy(a), cpp_strategy(b), grid, tol);
    *out_count = static_cast<int>(switches.size());
    if (static_cast<int>(switches.size()) > capacity) {
      throw ConstraintViolation("switch-point capacity too small");
    }
    for (std::size_t i = 0; i < switches.size(); ++i) {
      fill_threshold(switches[i], &out_switches[i]);
    }
  });
}

adsg_status adsg_region_map_compute(const adsg_params* params,
                                    adsg_axis axis1, const double* grid1,
                                    int n1, adsg_axis axis2,
                                    const double* grid2, int n2,
                                    const adsg_strategy* subset,
                                    int subset_len, double epsilon,
                                    int strict_epsilon,
                                    adsg_region_map** out) {
  if (!params || !grid1 || !grid2 || !out) {
    return invalid("params, grids and out must not be NULL");
  }
  return guarded([&] {
    std::vector<Strategy> strategies;
    for (int i = 0; i < subset_len; ++i) {
      strategies.push_back(cpp_strategy(subset[i]));
    }
    AnalysisOptions opt;
    opt.epsilon = epsilon;
    opt.strict_epsilon = strict_epsilon != 0;
    RegionMap map = region_map(params->value, cpp_axis(axis1),
                               std::vector<double>(grid1, grid1 + n1),
                               cpp_axis(axis2),
                               std::vector<double>(grid2, grid2 + n2),
                               strategies, opt);
    *out = new adsg_region_map{std::move(map)};
  });
}

int adsg_region_map_count(const adsg_region_map* map) {
  return map ? static_cast<int>(map->value.cells.size()) : 0;
}

adsg_status adsg_region_map_cell(const adsg_region_map* map, int index,
                                 adsg_region_cell* out) {
  if (!map || !out) return invalid("map and out must not be NULL");
  if (index < 0 || index >= static_cast<int>(map->value.cells.size())) {
    return invalid("cell index out of range");
  }
  const RegionCell& cell = map->value.cells[static_cast<std::size_t>(index)];
  out->axis1_value = cell.axis1_value;
  out->axis2_value = cell.axis2_value;
  out->winner = c_strategy(cell.winner);
  out->winner_profit = cell.winner_profit;
  out->gap = cell.gap;
  out->winner_case = cell.case_ids[static_cast<std::size_t>(cell.winner)];
  for (std::size_t s = 0; s < 4; ++s) {
    out->profits[s] = cell.profits[s];
    out->case_ids[s] = cell.case_ids[s];
  }
  return ADSG_OK;
}

void adsg_region_map_destroy(adsg_region_map* map) { delete map; }

adsg_status adsg_validate(int samples, uint64_t seed,
                          const adsg_grid_spec* spec,
                          adsg_validate_report* out) {
  if (!out) return invalid("out must not be NULL");
  if (samples < 1) return invalid("samples must be positive");
  return guarded([&] {
    const ValidationReport report =
        validate_closed_form(samples, seed, cpp_spec(spec));
    out->samples = report.samples;
    out->seed = report.seed;
    out->max_shortfall = report.max_shortfall;
    out->max_oracle_excess = report.max_oracle_excess;
    out->pass = report.pass ? 1 : 0;
    out->worst_strategy = c_strategy(report.worst.strategy);
    out->worst_params[0] = report.worst.params.q;
    out->worst_params[1] = report.worst.params.gamma;
    out->worst_params[2] = report.worst.params.alpha;
    out->worst_params[3] = report.worst.params.v;
    out->worst_params[4] = report.worst.params.c_v;
    out->worst_params[5] = report.worst.params.c_h;
    out->worst_closed_form = report.worst.closed_form;
    out->worst_oracle = report.worst.oracle;
    out->worst_bound = report.worst.resolution_bound;
    std::snprintf(out->failure, sizeof out->failure, "%s",
                  report.failure.c_str());
  });
}

}  // extern "C"
