#include "core/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "core/analysis.hpp"
#include "core/closed_form.hpp"
#include "core/demand.hpp"
#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/validate.hpp"

namespace adsgame {

namespace {

std::string describe(const ModelParams& p) {
  std::ostringstream s;
  s << "q=" << p.q << " gamma=" << p.gamma << " alpha=" << p.alpha
    << " t_h=" << p.t_h;
  return s.str();
}

using ScanLine = std::vector<ModelParams>;

// Groups the collection into ascending-q scan lines with all other fields
// equal.
std::vector<ScanLine> scan_lines(const std::vector<ModelParams>& grid) {
  std::map<std::tuple<double, double, double, double, double>, ScanLine> lines;
  for (const ModelParams& p : grid) {
    lines[{p.gamma, p.alpha, p.v, p.c_v, p.c_h}].push_back(p);
  }
  std::vector<ScanLine> out;
  out.reserve(lines.size());
  for (auto& [key, line] : lines) {
    std::sort(line.begin(), line.end(),
              [](const ModelParams& a, const ModelParams& b) { return a.q < b.q; });
    out.push_back(std::move(line));
  }
  return out;
}

LemmaReport check_lemma1(const std::vector<ModelParams>& grid,
                         const LemmaOptions& opt) {
  LemmaReport r{1, "packaged license+hardware sale is optimal (UP)", true, 0, ""};
  GridSpec spec = opt.oracle_spec;
  spec.threads = 1;

  std::vector<std::string> failures(grid.size());
  parallel_chunks(grid.size(), opt.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const ModelParams& p = grid[i];
      const OracleResult free_opt = optimize_prices(Strategy::UP, p, spec);
      PriceConstraints pinned;
      pinned.software = 0.0;
      const OracleResult pin_opt = optimize_prices(Strategy::UP, p, spec, pinned);
      const double tol = free_opt.resolution_bound + pin_opt.resolution_bound;
      if (std::abs(free_opt.best_profit - pin_opt.best_profit) > tol) {
        std::ostringstream msg;
        msg << describe(p) << ": unconstrained " << free_opt.best_profit
            << " vs license-free " << pin_opt.best_profit << " (tol " << tol
            << ")";
        failures[i] = msg.str();
      }
    }
  });
  for (const std::string& f : failures) {
    ++r.checks;
    if (!f.empty() && r.pass) {
      r.pass = false;
      r.counterexample = f;
    }
  }
  return r;
}

LemmaReport check_lemma2(const std::vector<ModelParams>& grid,
                         const LemmaOptions& opt) {
  LemmaReport r{2, "zero-adoption region is exact (UP and US)", true, 0, ""};

  // Rebuild each grid point with the high hardware cost; gamma is then at
  // or below 1 + t_h, which the relaxed validation rule admits.
  std::map<std::tuple<double, double, double, double>, bool> seen;
  for (const ModelParams& base : grid) {
    if (!seen.emplace(std::make_tuple(base.gamma, base.alpha, base.v, base.c_v), true)
             .second) {
      continue;
    }
    const double ch = opt.lemma2_hardware_cost * base.v;
    if (ch < base.v * (base.gamma - 1)) {
      r.pass = false;
      r.counterexample = "configured lemma-2 hardware cost does not reach the "
                         "zero-adoption region";
      return r;
    }
    const double q_bound = (ch / base.v + 2) / (base.gamma + 1);
    const std::vector<double> inside =
        linspace(1 + 0.2 * (q_bound - 1), q_bound, 8);
    for (double q : inside) {
      const ModelParams p = validate_params(q, base.gamma, base.alpha, base.v,
                                            base.c_v, ch,
                                            ParamRule::allow_low_upgrade);
      for (Strategy s : {Strategy::UP, Strategy::US}) {
        ++r.checks;
        const EquilibriumResult eq = equilibrium(s, p, opt.epsilon);
        const double adopters = eq.demand.software_stage1 +
                                eq.demand.software_stage2 +
                                eq.demand.ssh_units;
        const double base_profit = 2 * (2 * p.v - p.c_v);
        if (adopters != 0.0 || eq.profit != base_profit) {
          r.pass = false;
          std::ostringstream msg;
          msg << to_string(s) << " " << describe(p) << ": adoption "
              << adopters << ", profit " << eq.profit << " vs " << base_profit;
          r.counterexample = msg.str();
          return r;
        }
      }
    }
    // Just outside the region the add-on must sell.
    const double q_out = std::min(q_bound * 1.05, 5.0);
    if (q_out > q_bound) {
      const ModelParams p = validate_params(q_out, base.gamma, base.alpha,
                                            base.v, base.c_v, ch,
                                            ParamRule::allow_low_upgrade);
      for (Strategy s : {Strategy::UP, Strategy::US}) {
        ++r.checks;
        const EquilibriumResult eq = equilibrium(s, p, opt.epsilon);
        if (!(eq.demand.ssh_units > 0)) {
          r.pass = false;
          r.counterexample = std::string(to_string(s)) + " " + describe(p) +
                             ": no adoption just outside the region";
          return r;
        }
      }
    }
  }
  return r;
}

LemmaReport check_lemma3(const std::vector<ModelParams>& grid,
                         const LemmaOptions& opt) {
  LemmaReport r{3, "bundled-perpetual license price non-decreasing in q", true,
                0, ""};
  for (const ScanLine& line : scan_lines(grid)) {
    double prev = -1;
    for (const ModelParams& p : line) {
      ++r.checks;
      const EquilibriumResult eq = equilibrium(Strategy::BP, p, opt.epsilon);
      const double price = eq.prices.software;
      if (price < prev - 1e-12) {
        r.pass = false;
        r.counterexample = describe(p) + ": price fell from " +
                           std::to_string(prev) + " to " + std::to_string(price);
        return r;
      }
      prev = price;
      // Flat stretch: inside (q1, q2] at low alpha the price equals
      // v(gamma-1) exactly.
      if (p.alpha <= table::bp_alpha_bar(p) && p.q > table::bp_q1(p) &&
          p.q <= table::bp_q2(p)) {
        if (price != p.v * (p.gamma - 1)) {
          r.pass = false;
          r.counterexample =
              describe(p) + ": expected flat price " +
              std::to_string(p.v * (p.gamma - 1)) + ", got " +
              std::to_string(price);
          return r;
        }
      }
    }
  }
  return r;
}

LemmaReport check_lemma4(const std::vector<ModelParams>& grid,
                         const LemmaOptions& opt) {
  (void)opt;
  LemmaReport r{4, "subscription price branches ordered and increasing", true,
                0, ""};
  for (const ScanLine& line : scan_lines(grid)) {
    double prev_low = -1, prev_high = -1;
    for (const ModelParams& p : line) {
      ++r.checks;
      const double low = table::bs_price_low(p);
      const double high = table::bs_price_high(p);
      if (!(high < low)) {
        r.pass = false;
        r.counterexample = describe(p) + ": branch order violated";
        return r;
      }
      if (prev_low >= 0 && (low <= prev_low || high <= prev_high)) {
        r.pass = false;
        r.counterexample = describe(p) + ": branch not strictly increasing";
        return r;
      }
      prev_low = low;
      prev_high = high;
    }
  }
  return r;
}

LemmaReport check_lemma5(const std::vector<ModelParams>& grid,
                         const LemmaOptions& opt) {
  LemmaReport r{5, "pricing the bundle above 2v is strictly worse", true, 0,
                ""};
  GridSpec spec = opt.oracle_spec;
  spec.threads = 1;

  const int samples =
      std::min<int>(opt.lemma5_samples, static_cast<int>(grid.size()));
  std::vector<std::string> failures(static_cast<std::size_t>(samples));
  parallel_chunks(static_cast<std::size_t>(samples), opt.threads,
                  [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      // Spread the samples across the collection deterministically.
      const std::size_t idx = (k * grid.size()) / static_cast<std::size_t>(samples);
      const ModelParams& p = grid[idx];
      const RestrictedOracleResult restricted =
          optimize_restricted(p, SoftwareMode::perpetual, spec);
      const double full = equilibrium_profit(Strategy::BP, p).profit;
      if (!(restricted.best_profit < full)) {
        failures[k] = describe(p) + ": restricted " +
                      std::to_string(restricted.best_profit) +
                      " not below full-market " + std::to_string(full);
      }
    }
  });
  for (const std::string& f : failures) {
    ++r.checks;
    if (!f.empty() && r.pass) {
      r.pass = false;
      r.counterexample = f;
    }
  }
  return r;
}

LemmaReport check_lemma6(const std::vector<ModelParams>& grid,
                         const LemmaOptions& opt) {
  LemmaReport r{6, "deferred-payment mass non-increasing in q; zero under UP",
                true, 0, ""};
  for (const ScanLine& line : scan_lines(grid)) {
    double prev_us = 2, prev_bp = 2, prev_bs = 2;
    for (const ModelParams& p : line) {
      ++r.checks;
      const EquilibriumResult up = equilibrium(Strategy::UP, p, opt.epsilon);
      if (delayed_payment_mass(Strategy::UP, p, up.prices) != 0.0) {
        r.pass = false;
        r.counterexample = describe(p) + ": UP defers software payments";
        return r;
      }
      const auto masses = [&](Strategy s, double& prev) -> bool {
        const EquilibriumResult eq = equilibrium(s, p, opt.epsilon);
        const double mass = delayed_payment_mass(s, p, eq.prices);
        const bool ok = mass <= prev + 1e-9;
        if (!ok) {
          r.counterexample = std::string(to_string(s)) + " " + describe(p) +
                             ": delay mass rose from " + std::to_string(prev) +
                             " to " + std::to_string(mass);
        }
        prev = mass;
        return ok;
      };
      if (!masses(Strategy::US, prev_us) || !masses(Strategy::BP, prev_bp) ||
          !masses(Strategy::BS, prev_bs)) {
        r.pass = false;
        return r;
      }
    }
  }
  return r;
}

}  // namespace

std::vector<ModelParams> params_grid(const ModelParams& base,
                                     const std::vector<double>& q_values,
                                     const std::vector<double>& alpha_values) {
  std::vector<ModelParams> grid;
  grid.reserve(q_values.size() * alpha_values.size());
  for (double alpha : alpha_values) {
    for (double q : q_values) {
      grid.push_back(with_axis(with_axis(base, Axis::alpha, alpha), Axis::q, q));
    }
  }
  return grid;
}

std::vector<LemmaReport> lemma_checks(const std::vector<ModelParams>& grid,
                                      const LemmaOptions& opt) {
  if (grid.empty()) throw ConstraintViolation("lemma grid is empty");
  std::vector<LemmaReport> out;
  out.push_back(check_lemma1(grid, opt));
  out.push_back(check_lemma2(grid, opt));
  out.push_back(check_lemma3(grid, opt));
  out.push_back(check_lemma4(grid, opt));
  out.push_back(check_lemma5(grid, opt));
  out.push_back(check_lemma6(grid, opt));
  return out;
}

}  // namespace adsgame
