#include "core/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/errors.hpp"

namespace adsgame {

namespace table {

double up_gamma_bar(const ModelParams& p) { return 1 + p.t_h; }

double up_q1(const ModelParams& p) {
  const double g = p.gamma, th = p.t_h;
  const double d = g - th - 1;
  return (g * g + g + std::sqrt(g * (g + 1) * d * d)) / (g * g + g);
}

double up_q2(const ModelParams& p) { return (p.t_h + 2) / (p.gamma + 1); }

double us_alpha_bar(const ModelParams& p) {
  const double g = p.gamma;
  return 2 * g - 2 * std::sqrt(g * (g + 1)) + 1;
}

double us_q1(const ModelParams& p) { return up_q1(p); }

double us_q2(const ModelParams& p) {
  const double a = p.alpha, g = p.gamma, th = p.t_h;
  return (a + (a - 1) * th + 2 * g - 1) / ((a + 1) * g);
}

double us_q3(const ModelParams& p) {
  const double a = p.alpha, g = p.gamma, th = p.t_h;
  const double root = std::sqrt((a - 1) * (g + 1) *
                                (a * a - 2 * a - 4 * g + 1) *
                                (th - g + 1) * (th - g + 1));
  const double num =
      (a * a - 1) * th * (g + 1) -
      2 * (-(a * a * (g + 1)) - a * g * g + a + g * g + root + g);
  const double den = (a - 1) * (g + 1) * (a * g + a + 3 * g - 1);
  return num / den;
}

double us_q4(const ModelParams& p) { return (p.t_h + 2) / (p.gamma + 1); }

double bp_alpha_bar(const ModelParams& p) { return p.gamma / (p.gamma + 1); }

double bp_q1(const ModelParams& p) {
  const double a = p.alpha, g = p.gamma;
  return (a * (3 * g - 2) + g) / ((a + 1) * g);
}

double bp_q2(const ModelParams& p) {
  const double a = p.alpha, g = p.gamma;
  return (a * (2 * g * g + g - 1) + 2 * g * g) / ((a + 1) * g * (g + 1));
}

double bp_q3(const ModelParams& p) {
  const double a = p.alpha, g = p.gamma;
  const double s = a * g + a - g;  // positive exactly when alpha > bp_alpha_bar
  const double root =
      std::sqrt(2.0) * std::sqrt(a * (a + 1) * (a + 1) * (g - 1) * (g - 1) *
                                 g * g * (g + 1) * s * s * (a * g + a + g));
  const double num = a * a * a * (g + 1) * (g + 1) * g * g +
                     a * a * (g * g + 3 * g + 2) * g * g + root +
                     a * (g * g - g * g * g * g) - g * g * g * g - g * g * g;
  const double den = (a + 1) * (a + 1) * g * g * (g + 1) * s;
  return num / den;
}

double bp_software_price(const ModelParams& p, int case_id) {
  const double a = p.alpha, g = p.gamma, q = p.q, v = p.v;
  switch (case_id) {
    case 1:
      return v * (a * (g + g * q - 2) + g * (q - 1)) / (4 * a);
    case 2:
      return v * (g - 1);
    case 3:
      return v * (a * (g + 1) * (g * q - 1) + g * (g * q + q - 2)) /
             (2 * (a * g + a + g));
  }
  throw ConstraintViolation("bundled-perpetual case_id must be 1, 2, or 3");
}

double bs_alpha_bar(const ModelParams& p) {
  return 1 / (2 * (p.gamma - 2));
}

double bs_q_bar(const ModelParams& p) {
  const double a = p.alpha, g = p.gamma;
  const double den = g - 2 * a * (g - 2) * g;
  if (!(den > 0) || !std::isfinite(den)) {
    throw Degenerate("subscription case threshold has no finite value here");
  }
  const double num =
      std::sqrt(2.0) * std::sqrt(a * (g - 1) * (g - 1) * (2 * a + g)) + 2 * a +
      g;
  return num / den;
}

double bs_price_low(const ModelParams& p) {
  return 0.5 * p.v * (p.gamma * p.q - 1);
}

double bs_price_high(const ModelParams& p) {
  const double a = p.alpha, g = p.gamma, q = p.q, v = p.v;
  return v * (2 * a * (g * q - 1) + g * (q - 1)) / (2 * (2 * a + g));
}

}  // namespace table

namespace {

// Hardware price of the unbundled-subscription interior row (case 2).
double us_case2_hardware(const ModelParams& p) {
  const double a = p.alpha, g = p.gamma, q = p.q, th = p.t_h, v = p.v;
  const double den = a * a - 2 * a - 4 * g + 1;  // negative on the whole box
  const double num = -a * g + a + a * a * (g * q - 1) +
                     g * (-2 * g * q + q + 1) - th * (a + 2 * g - 1);
  return v * num / den;
}

double us_case2_software(const ModelParams& p) {
  const double a = p.alpha, g = p.gamma, q = p.q, th = p.t_h, v = p.v;
  const double den = a * a - 2 * a - 4 * g + 1;
  const double num = a + 2 * g - a * g * q - g * q + (a - 1) * th - 1;
  return v * num / den;
}

struct Candidate {
  int case_id = 0;
  bool eps_row = false;
  PriceDecision limit;  // epsilon = 0 for eps rows
};

PriceDecision up_row_prices(const ModelParams& p, int case_id) {
  const double v = p.v, q = p.q, g = p.gamma, th = p.t_h;
  const double pv = 2 * v;
  switch (case_id) {
    case 1:
      return PriceDecision::up(pv, 0.5 * (th + g * q - 1) * v, 0);
    case 2:
      // Only the hardware+license sum is pinned by optimality; the license
      // part is folded into the hardware price (packaged sale).
      return PriceDecision::up(pv, 0.5 * (th + g * q + q - 2) * v, 0);
    case 3:
      // Zero-demand row. ((1+g)q - 2) keeps the no-buyer threshold exactly
      // at 1 in floating point when v = 1.
      return PriceDecision::up(pv, ((1 + g) * q - 2) * v, 0);
  }
  throw ConstraintViolation("unbundled-perpetual case_id must be 1, 2, or 3");
}

PriceDecision us_row_prices(const ModelParams& p, int case_id, double eps) {
  const double v = p.v, q = p.q, g = p.gamma, th = p.t_h, a = p.alpha;
  const double pv = 2 * v;
  switch (case_id) {
    case 1:
      return PriceDecision::us(
          pv, std::max(0.0, 0.5 * (g * q + th - 1) * v - 0.5 * (a + 1) * eps),
          eps);
    case 2:
      return PriceDecision::us(pv, std::max(0.0, us_case2_hardware(p)),
                               std::max(0.0, us_case2_software(p)));
    case 3:
      return PriceDecision::us(
          pv,
          std::max(0.0, 0.5 * (th + g * q + q - 2) * v - 0.5 * (a + 3) * eps),
          eps);
    case 4:
      // Zero-demand row: hardware (g-1)qv and subscription (q-1)v, arranged
      // so the indifference points evaluate to exactly 1 when v = 1.
      return PriceDecision::us(pv, (g * q - q) * v, (q - 1) * v);
  }
  throw ConstraintViolation(
      "unbundled-subscription case_id must be between 1 and 4");
}

std::vector<Candidate> candidates(Strategy s, const ModelParams& p) {
  std::vector<Candidate> rows;
  switch (s) {
    case Strategy::UP:
      for (int id : {1, 2, 3}) rows.push_back({id, false, up_row_prices(p, id)});
      break;
    case Strategy::US:
      for (int id : {1, 2, 3, 4}) {
        const bool eps = id == 1 || id == 3;
        rows.push_back({id, eps, us_row_prices(p, id, 0)});
      }
      break;
    case Strategy::BP:
      for (int id : {1, 2, 3}) {
        rows.push_back({id, false,
                        PriceDecision::bp(2 * p.v,
                                          table::bp_software_price(p, id))});
      }
      break;
    case Strategy::BS:
      rows.push_back({1, false,
                      PriceDecision::bs(2 * p.v, table::bs_price_low(p))});
      rows.push_back({2, false,
                      PriceDecision::bs(2 * p.v, table::bs_price_high(p))});
      break;
  }
  return rows;
}

}  // namespace

int case_select(Strategy strategy, const ModelParams& p) {
  const double q = p.q, g = p.gamma, a = p.alpha;
  switch (strategy) {
    case Strategy::UP: {
      const double gbar = table::up_gamma_bar(p);
      if (g >= gbar) return q <= table::up_q1(p) ? 1 : 2;
      return q > table::up_q2(p) ? 2 : 3;
    }
    case Strategy::US: {
      const double gbar = 1 + p.t_h;
      if (g >= gbar) {
        if (a <= table::us_alpha_bar(p)) return q <= table::us_q1(p) ? 1 : 3;
        if (q <= table::us_q2(p)) return 1;
        return q <= table::us_q3(p) ? 2 : 3;
      }
      return q > table::us_q4(p) ? 3 : 4;
    }
    case Strategy::BP: {
      if (a <= table::bp_alpha_bar(p)) {
        if (q <= table::bp_q1(p)) return 1;
        return q <= table::bp_q2(p) ? 2 : 3;
      }
      return q <= table::bp_q3(p) ? 1 : 3;
    }
    case Strategy::BS: {
      if (g > 2.5 && a >= table::bs_alpha_bar(p)) return 1;
      return q <= table::bs_q_bar(p) ? 1 : 2;
    }
  }
  throw ConstraintViolation("unknown strategy");
}

EquilibriumValue equilibrium_profit(Strategy strategy, const ModelParams& p) {
  const std::vector<Candidate> rows = candidates(strategy, p);
  std::vector<double> values(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    values[i] = profit(strategy, p, rows[i].limit);
  }

  double best = values[0];
  for (double x : values) best = std::max(best, x);

  // Prefer the row picked by the literal case conditions when it ties the
  // best value; boundary rows are profit-continuous so this only breaks
  // ties, it never sacrifices profit.
  const int preferred = case_select(strategy, p);
  const double tol = 1e-12 * (1 + std::abs(best));
  int chosen = -1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (best - values[i] <= tol && rows[i].case_id == preferred) {
      chosen = static_cast<int>(i);
      break;
    }
  }
  if (chosen < 0) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (best - values[i] <= tol) {
        chosen = static_cast<int>(i);
        break;
      }
    }
  }

  EquilibriumValue out;
  out.case_id = rows[static_cast<std::size_t>(chosen)].case_id;
  out.profit = values[static_cast<std::size_t>(chosen)];
  out.epsilon_limit = rows[static_cast<std::size_t>(chosen)].eps_row;
  return out;
}

EquilibriumResult equilibrium(Strategy strategy, const ModelParams& p,
                              double epsilon) {
  if (!(epsilon > 0) || !(epsilon <= 1e-3)) {
    throw ConstraintViolation("epsilon must lie in (0, 1e-3]");
  }
  const EquilibriumValue value = equilibrium_profit(strategy, p);

  EquilibriumResult out;
  out.strategy = strategy;
  out.case_id = value.case_id;
  out.profit = value.profit;
  out.epsilon_limit = value.epsilon_limit;
  if (strategy == Strategy::US) {
    out.prices = us_row_prices(p, value.case_id,
                               value.epsilon_limit ? epsilon : 0);
  } else if (strategy == Strategy::UP) {
    out.prices = up_row_prices(p, value.case_id);
  } else if (strategy == Strategy::BP) {
    out.prices =
        PriceDecision::bp(2 * p.v, table::bp_software_price(p, value.case_id));
  } else {
    out.prices = PriceDecision::bs(2 * p.v, value.case_id == 1
                                                ? table::bs_price_low(p)
                                                : table::bs_price_high(p));
  }
  out.demand = demand_profile(strategy, p, out.prices);
  return out;
}

}  // namespace adsgame
