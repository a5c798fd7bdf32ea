// Command-line front end. All computation goes through the shared
// library's C interface; this binary only parses configuration and
// formats output.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adsgame.h"
#include "config.hpp"
#include "emit.hpp"
#include "json.hpp"

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCounterexample = 3;

const char* kStrategyNames[4] = {"UP", "US", "BP", "BS"};

bool parse_strategy(const std::string& name, adsg_strategy* out) {
  for (int i = 0; i < 4; ++i) {
    if (name == kStrategyNames[i]) {
      *out = static_cast<adsg_strategy>(i);
      return true;
    }
  }
  return false;
}

bool parse_axis(const std::string& name, adsg_axis* out) {
  if (name == "q") *out = ADSG_AXIS_Q;
  else if (name == "alpha") *out = ADSG_AXIS_ALPHA;
  else if (name == "gamma") *out = ADSG_AXIS_GAMMA;
  else return false;
  return true;
}

[[noreturn]] void config_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(kExitConfig);
}

adsg_params* make_params(const RunConfig& cfg) {
  adsg_params* p = nullptr;
  const adsg_status st = adsg_params_create(cfg.q, cfg.gamma, cfg.alpha,
                                            cfg.v, cfg.c_v, cfg.c_h, &p);
  if (st != ADSG_OK) config_error(adsg_last_error());
  return p;
}

std::vector<double> make_grid(const std::optional<std::pair<double, double>>& range,
                              const std::optional<int>& points,
                              double def_lo, double def_hi, int def_points,
                              bool open_low) {
  const double lo = range ? range->first : def_lo;
  const double hi = range ? range->second : def_hi;
  const int n = points ? *points : def_points;
  if (n < 2 || !(lo < hi)) config_error("grid needs lo < hi and >= 2 points");
  std::vector<double> g(static_cast<std::size_t>(n));
  if (open_low && !range) {
    // default q sweep excludes its lower endpoint
    for (int i = 0; i < n; ++i) {
      g[static_cast<std::size_t>(i)] = lo + (hi - lo) * (i + 1) / n;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    }
  }
  return g;
}

std::vector<double> axis_grid(const RunConfig& cfg, adsg_axis axis) {
  switch (axis) {
    case ADSG_AXIS_Q:
      return make_grid(cfg.q_range, cfg.q_points, 1.0, 5.0, 81, true);
    case ADSG_AXIS_ALPHA:
      return make_grid(cfg.alpha_range, cfg.alpha_points, 0.05, 0.95, 19, false);
    case ADSG_AXIS_GAMMA:
      return make_grid(cfg.gamma_range, cfg.gamma_points,
                       1.0 + cfg.c_h / cfg.v + 0.05, 3.5, 25, false);
  }
  config_error("unknown axis");
}

std::pair<double, double> axis_default_bracket(const RunConfig& cfg,
                                               adsg_axis axis) {
  switch (axis) {
    case ADSG_AXIS_Q: return {1.0 + 4.0 / 81.0, 5.0};
    case ADSG_AXIS_ALPHA: return {0.05, 0.95};
    case ADSG_AXIS_GAMMA: return {1.0 + cfg.c_h / cfg.v + 0.05, 3.5};
  }
  config_error("unknown axis");
}

ordered_json params_json(const adsg_params* p) {
  double f[8];
  adsg_params_get(p, f);
  ordered_json j;
  j["q"] = f[0];
  j["gamma"] = f[1];
  j["alpha"] = f[2];
  j["v"] = f[3];
  j["c_v"] = f[4];
  j["c_h"] = f[5];
  j["t_h"] = f[6];
  j["c"] = f[7];
  return j;
}

ordered_json demand_json(const adsg_demand& d) {
  ordered_json masses = ordered_json::array();
  for (int i = 0; i < d.behavior_count; ++i) {
    ordered_json m;
    m["behavior"] = d.behavior[i];
    m["consumer_class"] =
        d.behavior_class[i] == 0 ? "progressive" : "conservative";
    m["mass"] = d.behavior_mass[i];
    masses.push_back(m);
  }
  ordered_json j;
  j["behavior_mass"] = masses;
  j["software_stage1"] = d.software_stage1;
  j["software_stage2"] = d.software_stage2;
  j["software_perpetual"] = d.software_perpetual;
  j["ssh_units"] = d.ssh_units;
  j["vehicle_units"] = d.vehicle_units;
  return j;
}

ordered_json prices_json(const adsg_equilibrium& eq) {
  ordered_json j;
  const bool bundled = eq.strategy == ADSG_BP || eq.strategy == ADSG_BS;
  const bool subscription = eq.strategy == ADSG_US || eq.strategy == ADSG_BS;
  if (bundled) {
    j["p_b"] = eq.vehicle_price;
  } else {
    j["p_v"] = eq.vehicle_price;
    j["p_h"] = eq.hardware_price;
  }
  j[subscription ? "r_s" : "p_s"] = eq.software_price;
  return j;
}

ordered_json threshold_json(const adsg_threshold& t) {
  ordered_json j;
  j["name"] = t.name;
  j["value"] = t.value;
  j["bracket"] = {t.lo, t.hi};
  j["tol"] = t.tol;
  j["sign_lo"] = t.sign_lo;
  j["sign_hi"] = t.sign_hi;
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void check(adsg_status st) {
  if (st != ADSG_OK) {
    if (st == ADSG_ERR_CONSTRAINT || st == ADSG_ERR_NONFINITE) {
      config_error(adsg_last_error());
    }
    std::cerr << "error: " << adsg_last_error() << "\n";
    std::exit(kExitFailure);
  }
}

// ---------------------------------------------------------------- //

int cmd_equilibrium(const RunConfig& cfg) {
  adsg_params* p = make_params(cfg);
  adsg_equilibrium eq[4];
  for (int s = 0; s < 4; ++s) {
    check(adsg_equilibrium_solve(p, static_cast<adsg_strategy>(s), cfg.epsilon,
                                 &eq[s]));
  }
  adsg_strategy order[4];
  double profits[4];
  int cases[4];
  check(adsg_rank_strategies(p, cfg.epsilon, cfg.strict_epsilon ? 1 : 0, order,
                             profits, cases));

  std::string content;
  if (cfg.format == "csv") {
    std::string csv =
        "strategy,case_id,epsilon_limit,p_v,p_h,p_b,p_s,r_s,profit\n";
    for (int s = 0; s < 4; ++s) {
      const bool bundled = s >= 2;
      const bool subscription = s == 1 || s == 3;
      csv += kStrategyNames[s];
      csv += "," + std::to_string(eq[s].case_id);
      csv += ",";
      csv += eq[s].epsilon_limit ? "1" : "0";
      csv += "," + (bundled ? "" : format_number(eq[s].vehicle_price));
      csv += "," + (bundled ? "" : format_number(eq[s].hardware_price));
      csv += "," + (bundled ? format_number(eq[s].vehicle_price) : "");
      csv += "," + (subscription ? "" : format_number(eq[s].software_price));
      csv += "," + (subscription ? format_number(eq[s].software_price) : "");
      csv += "," + format_number(eq[s].profit) + "\n";
    }
    content = csv;
  } else {
    ordered_json results = ordered_json::array();
    for (int s = 0; s < 4; ++s) {
      ordered_json r;
      r["strategy"] = kStrategyNames[s];
      r["case_id"] = eq[s].case_id;
      r["prices"] = prices_json(eq[s]);
      r["profit"] = eq[s].profit;
      r["epsilon_limit"] = eq[s].epsilon_limit != 0;
      r["demand"] = demand_json(eq[s].demand);
      results.push_back(r);
    }
    ordered_json ranking = ordered_json::array();
    for (int i = 0; i < 4; ++i) {
      ordered_json r;
      r["strategy"] = kStrategyNames[order[i]];
      r["profit"] = profits[i];
      r["case_id"] = cases[i];
      ranking.push_back(r);
    }
    ordered_json j;
    j["params"] = params_json(p);
    j["epsilon"] = cfg.epsilon;
    j["results"] = results;
    j["ranking"] = ranking;
    j["winner"] = kStrategyNames[order[0]];
    content = dump(j);
  }
  adsg_params_destroy(p);
  write_output(cfg.out, content);
  return kExitOk;
}

int cmd_regions(const RunConfig& cfg) {
  adsg_params* p = make_params(cfg);
  adsg_axis axis1, axis2;
  if (!parse_axis(cfg.axis, &axis1) || !parse_axis(cfg.axis2, &axis2)) {
    config_error("axes must be one of q, alpha, gamma");
  }

  std::vector<adsg_strategy> subset;
  const std::vector<std::string>& names =
      !cfg.pair.empty() ? cfg.pair : cfg.strategies;
  for (const std::string& name : names) {
    adsg_strategy s;
    if (!parse_strategy(name, &s)) config_error("unknown strategy " + name);
    subset.push_back(s);
  }

  const std::vector<double> grid1 = axis_grid(cfg, axis1);
  const std::vector<double> grid2 = axis_grid(cfg, axis2);

  adsg_region_map* map = nullptr;
  check(adsg_region_map_compute(p, axis1, grid1.data(),
                                static_cast<int>(grid1.size()), axis2,
                                grid2.data(), static_cast<int>(grid2.size()),
                                subset.empty() ? nullptr : subset.data(),
                                static_cast<int>(subset.size()), cfg.epsilon,
                                cfg.strict_epsilon ? 1 : 0, &map));

  const char* axis1_name = cfg.axis.c_str();
  const char* axis2_name = cfg.axis2.c_str();
  const int count = adsg_region_map_count(map);

  std::string content;
  if (cfg.format == "json") {
    ordered_json cells = ordered_json::array();
    for (int i = 0; i < count; ++i) {
      adsg_region_cell cell;
      check(adsg_region_map_cell(map, i, &cell));
      ordered_json c;
      c[axis1_name] = cell.axis1_value;
      c[axis2_name] = cell.axis2_value;
      c["winner"] = kStrategyNames[cell.winner];
      c["profit_winner"] = cell.winner_profit;
      c["gap"] = cell.gap;
      c["case_winner"] = cell.winner_case;
      cells.push_back(c);
    }
    ordered_json j;
    j["axis1"] = axis1_name;
    j["axis2"] = axis2_name;
    j["cells"] = cells;
    content = dump(j);
  } else {
    std::string csv = std::string(axis1_name) + "," + axis2_name +
                      ",winner,profit_winner,gap,case_winner\n";
    for (int i = 0; i < count; ++i) {
      adsg_region_cell cell;
      check(adsg_region_map_cell(map, i, &cell));
      csv += format_number(cell.axis1_value);
      csv += "," + format_number(cell.axis2_value);
      csv += ",";
      csv += kStrategyNames[cell.winner];
      csv += "," + format_number(cell.winner_profit);
      csv += "," + format_number(cell.gap);
      csv += "," + std::to_string(cell.winner_case) + "\n";
    }
    content = csv;
  }
  adsg_region_map_destroy(map);
  adsg_params_destroy(p);
  write_output(cfg.out, content);
  return kExitOk;
}

int cmd_thresholds(const RunConfig& cfg) {
  adsg_params* p = make_params(cfg);
  if (cfg.pair.size() != 2) config_error("thresholds needs --pair A,B");
  adsg_strategy a, b;
  if (!parse_strategy(cfg.pair[0], &a) || !parse_strategy(cfg.pair[1], &b)) {
    config_error("unknown strategy in --pair");
  }
  adsg_axis axis;
  if (!parse_axis(cfg.axis, &axis)) config_error("unknown axis " + cfg.axis);

  char name[128];
  std::snprintf(name, sizeof name, "%s/%s threshold on %s (alpha=%g, gamma=%g)",
                cfg.pair[0].c_str(), cfg.pair[1].c_str(), cfg.axis.c_str(),
                cfg.alpha, cfg.gamma);

  ordered_json j;
  if (cfg.bracket) {
    adsg_threshold t;
    const adsg_status st =
        adsg_find_threshold(p, a, b, axis, cfg.bracket->first,
                            cfg.bracket->second, cfg.tol, name, &t);
    if (st == ADSG_ERR_NO_SIGN_CHANGE) {
      std::cerr << "error: " << adsg_last_error() << "\n";
      adsg_params_destroy(p);
      return kExitFailure;
    }
    check(st);
    j = threshold_json(t);
  } else {
    const auto [lo, hi] = axis_default_bracket(cfg, axis);
    int dominant = 0;
    adsg_strategy winner;
    adsg_threshold t;
    std::snprintf(t.name, sizeof t.name, "%s", name);
    check(adsg_dominance_frontier(p, a, b, axis, lo, hi, cfg.tol, &dominant,
                                  &winner, &t));
    if (dominant) {
      j["dominance"] = true;
      j["winner"] = kStrategyNames[winner];
      j["pair"] = {cfg.pair[0], cfg.pair[1]};
      j["axis"] = cfg.axis;
    } else {
      std::snprintf(t.name, sizeof t.name, "%s", name);
      j = threshold_json(t);
    }
  }
  adsg_params_destroy(p);

  std::string content;
  if (cfg.format == "csv") {
    if (j.contains("dominance")) {
      content = "dominance,winner\n1," + j["winner"].get<std::string>() + "\n";
    } else {
      content = "name,value,lo,hi,tol,sign_lo,sign_hi\n";
      content += j["name"].get<std::string>() + "," +
                 format_number(j["value"]) + "," +
                 format_number(j["bracket"][0]) + "," +
                 format_number(j["bracket"][1]) + "," +
                 format_number(j["tol"]) + "," +
                 std::to_string(j["sign_lo"].get<int>()) + "," +
                 std::to_string(j["sign_hi"].get<int>()) + "\n";
    }
  } else {
    content = dump(j);
  }
  write_output(cfg.out, content);
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg) {
  adsg_grid_spec spec;
  adsg_grid_spec_default(&spec);
  spec.points = cfg.grid_points;
  spec.refine_rounds = cfg.refine_rounds;
  spec.shrink = cfg.shrink;

  adsg_validate_report report;
  check(adsg_validate(cfg.samples, cfg.seed, &spec, &report));

  ordered_json j;
  j["samples"] = report.samples;
  j["seed"] = report.seed;
  j["max_shortfall"] = report.max_shortfall;
  j["max_oracle_excess"] = report.max_oracle_excess;
  j["pass"] = report.pass != 0;
  ordered_json worst;
  worst["strategy"] = kStrategyNames[report.worst_strategy];
  worst["q"] = report.worst_params[0];
  worst["gamma"] = report.worst_params[1];
  worst["alpha"] = report.worst_params[2];
  worst["v"] = report.worst_params[3];
  worst["c_v"] = report.worst_params[4];
  worst["c_h"] = report.worst_params[5];
  worst["closed_form"] = report.worst_closed_form;
  worst["oracle"] = report.worst_oracle;
  worst["resolution_bound"] = report.worst_bound;
  j["worst"] = worst;
  j["failure"] = report.failure;
  write_output(cfg.out, dump(j));

  if (!report.pass) {
    std::cerr << "counterexample: " << report.failure << "\n";
    return kExitCounterexample;
  }
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg) {
  adsg_params* p = make_params(cfg);
  adsg_strategy strategy;
  if (!parse_strategy(cfg.strategy, &strategy)) {
    config_error("unknown strategy " + cfg.strategy);
  }
  const bool bundled = strategy == ADSG_BP || strategy == ADSG_BS;

  double vehicle, hardware = 0, software;
  if (cfg.prices.empty()) {
    adsg_equilibrium eq;
    check(adsg_equilibrium_solve(p, strategy, cfg.epsilon, &eq));
    vehicle = eq.vehicle_price;
    hardware = bundled ? 0 : eq.hardware_price;
    software = eq.software_price;
  } else if (bundled && cfg.prices.size() == 2) {
    vehicle = cfg.prices[0];
    software = cfg.prices[1];
  } else if (!bundled && cfg.prices.size() == 3) {
    vehicle = cfg.prices[0];
    hardware = cfg.prices[1];
    software = cfg.prices[2];
  } else {
    config_error("--prices needs p_v,p_h,p_s|r_s (unbundled) or p_b,p_s|r_s "
                 "(bundled)");
  }

  adsg_demand analytic;
  check(adsg_demand_eval(p, strategy, vehicle, hardware, software, &analytic,
                         nullptr));
  adsg_mc_result mc;
  check(adsg_mc_demand(p, strategy, vehicle, hardware, software, cfg.n,
                       cfg.seed, &mc));

  std::string content;
  if (cfg.format == "json") {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < mc.behavior_count; ++i) {
      ordered_json r;
      r["behavior"] = mc.behavior[i];
      r["consumer_class"] =
          mc.behavior_class[i] == 0 ? "progressive" : "conservative";
      r["analytic_mass"] = analytic.behavior_mass[i];
      r["frequency"] = mc.behavior_frequency[i];
      r["std_error"] = mc.behavior_std_error[i];
      r["count"] = mc.behavior_count_raw[i];
      rows.push_back(r);
    }
    ordered_json j;
    j["strategy"] = cfg.strategy;
    j["n"] = cfg.n;
    j["seed"] = cfg.seed;
    j["behaviors"] = rows;
    j["software_stage1"] = mc.software_stage1;
    j["software_stage2"] = mc.software_stage2;
    j["software_perpetual"] = mc.software_perpetual;
    j["ssh_units"] = mc.ssh_units;
    j["vehicle_units"] = mc.vehicle_units;
    content = dump(j);
  } else {
    std::string csv = "behavior,consumer_class,analytic_mass,frequency,"
                     "std_error,count\n";
    for (int i = 0; i < mc.behavior_count; ++i) {
      csv += mc.behavior[i];
      csv += mc.behavior_class[i] == 0 ? ",progressive," : ",conservative,";
      csv += format_number(analytic.behavior_mass[i]);
      csv += "," + format_number(mc.behavior_frequency[i]);
      csv += "," + format_number(mc.behavior_std_error[i]);
      csv += "," + std::to_string(mc.behavior_count_raw[i]) + "\n";
    }
    content = csv;
  }
  adsg_params_destroy(p);
  write_output(cfg.out, content);
  return kExitOk;
}

int cmd_oscillation(const RunConfig& cfg) {
  adsg_params* p = make_params(cfg);
  adsg_strategy a = ADSG_US, b = ADSG_BS;
  if (!cfg.pair.empty()) {
    if (cfg.pair.size() != 2 || !parse_strategy(cfg.pair[0], &a) ||
        !parse_strategy(cfg.pair[1], &b)) {
      config_error("--pair needs two strategies");
    }
  }
  RunConfig grid_cfg = cfg;
  if (!grid_cfg.q_points) grid_cfg.q_points = 401;
  const std::vector<double> grid = axis_grid(grid_cfg, ADSG_AXIS_Q);

  std::vector<adsg_threshold> switches(64);
  int count = 0;
  check(adsg_oscillation_scan(p, a, b, grid.data(),
                              static_cast<int>(grid.size()), cfg.tol,
                              switches.data(),
                              static_cast<int>(switches.size()), &count));
  adsg_params_destroy(p);

  std::string content;
  if (cfg.format == "json") {
    ordered_json list = ordered_json::array();
    for (int i = 0; i < count; ++i) list.push_back(threshold_json(switches[static_cast<std::size_t>(i)]));
    ordered_json j;
    j["pair"] = {kStrategyNames[a], kStrategyNames[b]};
    j["alpha"] = cfg.alpha;
    j["gamma"] = cfg.gamma;
    j["switches"] = list;
    content = dump(j);
  } else {
    std::string csv = "index,value,lo,hi,tol\n";
    for (int i = 0; i < count; ++i) {
      const adsg_threshold& t = switches[static_cast<std::size_t>(i)];
      csv += std::to_string(i + 1) + "," + format_number(t.value) + "," +
             format_number(t.lo) + "," + format_number(t.hi) + "," +
             format_number(t.tol) + "\n";
    }
    content = csv;
  }
  write_output(cfg.out, content);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium pricing for vehicles with an upgradeable "
               "driving add-on"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration");

  RawOptions flags;
  double q = 0, gamma = 0, alpha = 0, v = 0, c_v = 0, c_h = 0;
  std::string out, format, strategy, axis, axis2;
  std::uint64_t seed = 0, n = 0;
  double epsilon = 0, tol = 0, shrink = 0;
  bool strict_epsilon = false;
  std::vector<std::string> pair, strategies;
  std::vector<double> prices, bracket, q_range, alpha_range, gamma_range;
  int samples = 0, grid_points = 0, refine_rounds = 0;
  int q_points = 0, alpha_points = 0, gamma_points = 0;

  app.add_option("--q", q, "initial reliability multiplier");
  app.add_option("--gamma", gamma, "upgrade multiplier");
  app.add_option("--alpha", alpha, "compatibility probability");
  app.add_option("--v", v, "per-stage vehicle utility");
  app.add_option("--c_v", c_v, "vehicle cost");
  app.add_option("--c_h", c_h, "support-hardware cost");
  app.add_option("--out", out, "output file (default stdout)");
  app.add_option("--format", format, "csv or json");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--epsilon", epsilon, "epsilon for degenerate rows");
  app.add_flag("--strict-epsilon", strict_epsilon,
               "charge epsilon-limit rows their O(epsilon) correction");

  app.add_subcommand("equilibrium", "optimal prices and profit per strategy");
  auto* regions_cmd =
      app.add_subcommand("regions", "winning strategy over a parameter grid");
  auto* thresholds_cmd = app.add_subcommand(
      "thresholds", "profit-crossing point between two strategies");
  auto* validate_cmd = app.add_subcommand(
      "validate", "closed form vs grid search over random draws");
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Monte Carlo demand vs analytic masses");
  auto* oscillation_cmd = app.add_subcommand(
      "oscillation", "strategy switch points along the reliability axis");

  for (auto* cmd : {regions_cmd, thresholds_cmd, oscillation_cmd}) {
    cmd->add_option("--pair", pair, "two strategies, e.g. BP,BS")
        ->delimiter(',');
  }
  regions_cmd->add_option("--strategies", strategies, "strategy subset")
      ->delimiter(',');
  regions_cmd->add_option("--axis2", axis2, "second grid axis");
  for (auto* cmd : {regions_cmd, thresholds_cmd}) {
    cmd->add_option("--axis", axis, "q, alpha, or gamma");
  }
  thresholds_cmd->add_option("--bracket", bracket, "lo,hi")->delimiter(',');
  for (auto* cmd : {thresholds_cmd, oscillation_cmd}) {
    cmd->add_option("--tol", tol, "bisection tolerance");
  }
  simulate_cmd->add_option("--strategy", strategy, "strategy to simulate");
  simulate_cmd->add_option("--prices", prices,
                           "explicit prices (default: equilibrium prices)")
      ->delimiter(',');
  simulate_cmd->add_option("--n", n, "agents per consumer class");
  validate_cmd->add_option("--samples", samples, "number of random draws");
  for (auto* cmd : {validate_cmd}) {
    cmd->add_option("--points", grid_points, "grid resolution per axis");
    cmd->add_option("--rounds", refine_rounds, "refinement rounds");
    cmd->add_option("--shrink", shrink, "refinement shrink factor");
  }
  for (auto* cmd : {regions_cmd, oscillation_cmd}) {
    cmd->add_option("--q-range", q_range, "lo,hi")->delimiter(',');
    cmd->add_option("--q-points", q_points, "grid points");
  }
  regions_cmd->add_option("--alpha-range", alpha_range, "lo,hi")->delimiter(',');
  regions_cmd->add_option("--alpha-points", alpha_points, "grid points");
  regions_cmd->add_option("--gamma-range", gamma_range, "lo,hi")->delimiter(',');
  regions_cmd->add_option("--gamma-points", gamma_points, "grid points");

  CLI11_PARSE(app, argc, argv);

  const auto took = [](const CLI::App& a, const std::string& name) {
    const CLI::Option* opt = a.get_option_no_throw(name);
    return opt && opt->count() > 0;
  };
  if (took(app, "--q")) flags.q = q;
  if (took(app, "--gamma")) flags.gamma = gamma;
  if (took(app, "--alpha")) flags.alpha = alpha;
  if (took(app, "--v")) flags.v = v;
  if (took(app, "--c_v")) flags.c_v = c_v;
  if (took(app, "--c_h")) flags.c_h = c_h;
  if (took(app, "--out")) flags.out = out;
  if (took(app, "--format")) flags.format = format;
  if (took(app, "--seed")) flags.seed = seed;
  if (took(app, "--epsilon")) flags.epsilon = epsilon;
  if (strict_epsilon) flags.strict_epsilon = true;

  CLI::App* active = app.get_subcommands().front();
  flags.command = active->get_name();
  if (!pair.empty()) flags.pair = pair;
  if (!strategies.empty()) flags.strategies = strategies;
  if (took(*active, "--axis")) flags.axis = axis;
  if (took(*active, "--axis2")) flags.axis2 = axis2;
  if (!bracket.empty()) {
    if (bracket.size() != 2) config_error("--bracket needs lo,hi");
    flags.bracket = std::make_pair(bracket[0], bracket[1]);
  }
  if (took(*active, "--tol")) flags.tol = tol;
  if (took(*active, "--strategy")) flags.strategy = strategy;
  if (!prices.empty()) flags.prices = prices;
  if (took(*active, "--n")) flags.n = n;
  if (took(*active, "--samples")) flags.samples = samples;
  if (took(*active, "--points")) flags.grid_points = grid_points;
  if (took(*active, "--rounds")) flags.refine_rounds = refine_rounds;
  if (took(*active, "--shrink")) flags.shrink = shrink;
  if (!q_range.empty()) {
    if (q_range.size() != 2) config_error("--q-range needs lo,hi");
    flags.q_range = std::make_pair(q_range[0], q_range[1]);
  }
  if (took(*active, "--q-points")) flags.q_points = q_points;
  if (!alpha_range.empty()) {
    if (alpha_range.size() != 2) config_error("--alpha-range needs lo,hi");
    flags.alpha_range = std::make_pair(alpha_range[0], alpha_range[1]);
  }
  if (took(*active, "--alpha-points")) flags.alpha_points = alpha_points;
  if (!gamma_range.empty()) {
    if (gamma_range.size() != 2) config_error("--gamma-range needs lo,hi");
    flags.gamma_range = std::make_pair(gamma_range[0], gamma_range[1]);
  }
  if (took(*active, "--gamma-points")) flags.gamma_points = gamma_points;

  RawOptions file_options;
  if (!config_path.empty()) {
    try {
      file_options = load_config_file(config_path);
    } catch (const std::exception& e) {
      config_error(e.what());
    }
  }

  RunConfig cfg = merge_options(flags, file_options);
  if (cfg.command.empty()) config_error("no command selected");
  if (cfg.format.empty()) {
    cfg.format = (cfg.command == "regions" || cfg.command == "simulate" ||
                  cfg.command == "oscillation")
                     ? "csv"
                     : "json";
  }
  if (cfg.format != "csv" && cfg.format != "json") {
    config_error("--format must be csv or json");
  }

  try {
    if (cfg.command == "equilibrium") return cmd_equilibrium(cfg);
    if (cfg.command == "regions") return cmd_regions(cfg);
    if (cfg.command == "thresholds") return cmd_thresholds(cfg);
    if (cfg.command == "validate") return cmd_validate(cfg);
    if (cfg.command == "simulate") return cmd_simulate(cfg);
    if (cfg.command == "oscillation") return cmd_oscillation(cfg);
    config_error("unknown command " + cfg.command);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
