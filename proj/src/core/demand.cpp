#include "core/demand.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace adsgame {

namespace {

double clamp01(double x) { return std::min(std::max(x, 0.0), 1.0); }

ThresholdSet raw_thresholds(Strategy s, const ModelParams& p,
                            const PriceDecision& pr) {
  const double v = p.v, q = p.q, g = p.gamma;
  ThresholdSet t;
  switch (s) {
    case Strategy::UP: {
      const double a = pr.hardware + pr.software;
      t.raw_12 = 1.0 / q;
      t.raw_23 = (a + v) / (g * q * v);
      t.raw_13 = (a + 2 * v) / ((1 + g) * q * v);
      break;
    }
    case Strategy::US: {
      const double r = pr.software;
      t.raw_12 = (r + v) / (q * v);
      t.raw_23 = (pr.hardware + r + v) / (g * q * v);
      t.raw_13 = (pr.hardware + 2 * r + 2 * v) / ((1 + g) * q * v);
      break;
    }
    case Strategy::BP: {
      const double ps = pr.software;
      t.raw_12 = 1.0 / q;
      t.raw_23 = (ps + v) / (g * q * v);
      t.raw_13 = (ps + 2 * v) / ((1 + g) * q * v);
      t.raw_34 = t.raw_23;
      t.has_34 = true;
      break;
    }
    case Strategy::BS: {
      const double r = pr.software;
      t.raw_12 = (r + v) / (q * v);
      t.raw_23 = (r + v) / (g * q * v);
      t.raw_13 = (2 * r + 2 * v) / ((1 + g) * q * v);
      t.raw_34 = t.raw_23;
      t.has_34 = true;
      break;
    }
  }
  t.clamped_12 = clamp01(t.raw_12);
  t.clamped_23 = clamp01(t.raw_23);
  t.clamped_13 = clamp01(t.raw_13);
  t.clamped_34 = t.has_34 ? clamp01(t.raw_34) : 0;
  return t;
}

// Per-class stage-1 plan masses from clamped thresholds. `adopt` is the
// plan that uses the add-on in both stages, `delay` the plan that waits
// for the upgrade, `reentry` the conservative-class stage-2 entry mass
// (bundled strategies only, already scaled by alpha).
struct ClassMasses {
  double adopt = 0;
  double delay = 0;
  double never = 0;
  double reentry = 0;
};

ClassMasses masses_from(const ThresholdSet& t, double alpha, bool bundled) {
  ClassMasses m;
  m.adopt = std::max(0.0, 1.0 - std::max(t.clamped_12, t.clamped_13));
  m.delay = std::max(0.0, t.clamped_12 - t.clamped_23);
  m.never = 1.0 - m.adopt - m.delay;
  if (bundled) m.reentry = alpha * std::max(0.0, 1.0 - t.clamped_34);
  return m;
}

void require_full_market(const ModelParams& p, const PriceDecision& pr) {
  if (pr.vehicle > 2 * p.v) {
    throw RestrictedPricing(
        "vehicle/bundle price exceeds 2v; use restricted_demand_profit");
  }
}

}  // namespace

double DemandProfile::mass(Behavior b, ConsumerClass c) const {
  for (int i = 0; i < entry_count; ++i) {
    const auto& e = entries[static_cast<std::size_t>(i)];
    if (e.behavior == b && e.consumer_class == c) return e.mass;
  }
  return 0;
}

ThresholdSet indifference_points(Strategy strategy, const ModelParams& params,
                                 const PriceDecision& prices) {
  require_strategy(prices, strategy);
  return raw_thresholds(strategy, params, prices);
}

std::vector<BehaviorUtility> behavior_utilities(Strategy strategy,
                                                const ModelParams& params,
                                                const PriceDecision& prices,
                                                double theta) {
  require_strategy(prices, strategy);
  const double v = params.v, q = params.q, g = params.gamma;
  const double both = v * theta * (q + g * q);   // add-on used in both stages
  const double late = v + v * theta * g * q;      // vehicle only, then add-on
  const double base = 2 * v;                      // vehicle only, both stages
  const double pv = prices.vehicle, ph = prices.hardware, ps = prices.software;

  switch (strategy) {
    case Strategy::UP:
      return {{Behavior::PPH, both - ps - pv - ph},
              {Behavior::PDP, late - ps - pv - ph},
              {Behavior::NNN, base - pv}};
    case Strategy::US:
      return {{Behavior::PSS, both - 2 * ps - pv - ph},
              {Behavior::PDS, late - ps - pv - ph},
              {Behavior::NNN, base - pv}};
    case Strategy::BP:
      return {{Behavior::PH, both - ps - pv},
              {Behavior::DP, late - ps - pv},
              {Behavior::NN, base - pv},
              {Behavior::NP, late - ps - pv}};
    case Strategy::BS:
      return {{Behavior::SS, both - 2 * ps - pv},
              {Behavior::DS, late - ps - pv},
              {Behavior::NN, base - pv},
              {Behavior::NS, late - ps - pv}};
  }
  return {};
}

DemandProfile demand_profile(Strategy strategy, const ModelParams& params,
                             const PriceDecision& prices) {
  require_strategy(prices, strategy);
  require_full_market(params, prices);

  const ThresholdSet t = raw_thresholds(strategy, params, prices);
  const double alpha = params.alpha;
  const ClassMasses m = masses_from(t, alpha, is_bundled(strategy));

  DemandProfile d;
  d.strategy = strategy;
  d.vehicle_units = 2;

  using CC = ConsumerClass;
  switch (strategy) {
    case Strategy::UP:
      d.add(Behavior::PPH, CC::progressive, m.adopt);
      d.add(Behavior::PDP, CC::progressive, alpha * m.delay);
      d.add(Behavior::PDN, CC::progressive, (1 - alpha) * m.delay);
      d.add(Behavior::NNN, CC::progressive, m.never);
      d.add(Behavior::NNN, CC::conservative, 1.0);
      d.software_stage1 = m.adopt;
      d.software_stage2 = alpha * m.delay;
      d.software_perpetual = m.adopt + alpha * m.delay;
      d.ssh_units = m.adopt + m.delay;
      break;
    case Strategy::US:
      d.add(Behavior::PSS, CC::progressive, alpha * m.adopt);
      d.add(Behavior::PSN, CC::progressive, (1 - alpha) * m.adopt);
      d.add(Behavior::PDS, CC::progressive, alpha * m.delay);
      d.add(Behavior::PDN, CC::progressive, (1 - alpha) * m.delay);
      d.add(Behavior::NNN, CC::progressive, m.never);
      d.add(Behavior::NNN, CC::conservative, 1.0);
      d.software_stage1 = m.adopt;
      d.software_stage2 = alpha * (m.adopt + m.delay);
      d.ssh_units = m.adopt + m.delay;
      break;
    case Strategy::BP:
      d.add(Behavior::PH, CC::progressive, m.adopt);
      d.add(Behavior::DP, CC::progressive, alpha * m.delay);
      d.add(Behavior::DN, CC::progressive, (1 - alpha) * m.delay);
      d.add(Behavior::NN, CC::progressive, m.never);
      d.add(Behavior::NP, CC::conservative, m.reentry);
      d.add(Behavior::NN, CC::conservative, 1.0 - m.reentry);
      d.software_stage1 = m.adopt;
      d.software_stage2 = alpha * m.delay + m.reentry;
      d.software_perpetual = m.adopt + alpha * m.delay + m.reentry;
      d.ssh_units = 2;
      break;
    case Strategy::BS:
      d.add(Behavior::SS, CC::progressive, alpha * m.adopt);
      d.add(Behavior::SN, CC::progressive, (1 - alpha) * m.adopt);
      d.add(Behavior::DS, CC::progressive, alpha * m.delay);
      d.add(Behavior::DN, CC::progressive, (1 - alpha) * m.delay);
      d.add(Behavior::NN, CC::progressive, m.never);
      d.add(Behavior::NS, CC::conservative, m.reentry);
      d.add(Behavior::NN, CC::conservative, 1.0 - m.reentry);
      d.software_stage1 = m.adopt;
      d.software_stage2 = alpha * (m.adopt + m.delay) + m.reentry;
      d.ssh_units = 2;
      break;
  }
  return d;
}

double profit(Strategy strategy, const ModelParams& params,
              const PriceDecision& prices) {
  require_strategy(prices, strategy);
  require_full_market(params, prices);

  const ThresholdSet t = raw_thresholds(strategy, params, prices);
  const double alpha = params.alpha;
  const ClassMasses m = masses_from(t, alpha, is_bundled(strategy));

  switch (strategy) {
    case Strategy::UP: {
      const double licenses = m.adopt + alpha * m.delay;
      const double ssh = m.adopt + m.delay;
      return licenses * prices.software +
             ssh * (prices.hardware - params.c_h) +
             2 * (prices.vehicle - params.c_v);
    }
    case Strategy::US: {
      // Stage-1 subscribers all pay once; the compatible ones pay again,
      // and delayed subscribers pay in stage 2 only.
      const double payments = (1 + alpha) * m.adopt + alpha * m.delay;
      const double ssh = m.adopt + m.delay;
      return payments * prices.software +
             ssh * (prices.hardware - params.c_h) +
             2 * (prices.vehicle - params.c_v);
    }
    case Strategy::BP: {
      const double licenses = m.adopt + alpha * m.delay + m.reentry;
      return licenses * prices.software + 2 * (prices.vehicle - params.c);
    }
    case Strategy::BS: {
      const double payments =
          (1 + alpha) * m.adopt + alpha * m.delay + m.reentry;
      return payments * prices.software + 2 * (prices.vehicle - params.c);
    }
  }
  return 0;
}

double delayed_payment_mass(Strategy strategy, const ModelParams& params,
                            const PriceDecision& prices) {
  require_strategy(prices, strategy);
  if (prices.software <= 0) return 0;
  const ThresholdSet t = raw_thresholds(strategy, params, prices);
  return clamp01(t.raw_12 - t.raw_23);
}

std::pair<DemandProfile, double> restricted_demand_profit(
    const ModelParams& params, double bundle_price, double software_price,
    SoftwareMode mode) {
  const double v = params.v, q = params.q, g = params.gamma;
  if (!(bundle_price > 2 * v)) {
    throw ConstraintViolation(
        "restricted market requires bundle_price > 2v");
  }
  if (software_price < 0) {
    throw ConstraintViolation("prices must be non-negative");
  }

  // The outside option here is buying nothing (utility 0) rather than the
  // vehicle alone, so the bundle price enters the thresholds.
  const double s = software_price, b = bundle_price;
  double t12, t23, t13;
  if (mode == SoftwareMode::perpetual) {
    t12 = 1.0 / q;
    t23 = (s + b - v) / (g * q * v);
    t13 = (s + b) / ((1 + g) * q * v);
  } else {
    t12 = (s + v) / (q * v);
    t23 = (s + b - v) / (g * q * v);
    t13 = (2 * s + b) / ((1 + g) * q * v);
  }
  const double c12 = clamp01(t12), c23 = clamp01(t23), c13 = clamp01(t13);
  const double adopt = std::max(0.0, 1.0 - std::max(c12, c13));
  const double delay = std::max(0.0, c12 - c23);
  const double alpha = params.alpha;
  const double buyers = adopt + delay;

  DemandProfile d;
  d.strategy = mode == SoftwareMode::perpetual ? Strategy::BP : Strategy::BS;
  d.restricted = true;
  using CC = ConsumerClass;
  d.add(Behavior::PH, CC::progressive, adopt);
  d.add(Behavior::DP, CC::progressive, alpha * delay);
  d.add(Behavior::PN, CC::progressive, (1 - alpha) * delay);
  d.add(Behavior::NA, CC::progressive, 1.0 - buyers);
  d.add(Behavior::NA, CC::conservative, 1.0);
  d.vehicle_units = buyers;
  d.ssh_units = buyers;

  double software_revenue;
  if (mode == SoftwareMode::perpetual) {
    d.software_stage1 = adopt;
    d.software_stage2 = alpha * delay;
    d.software_perpetual = adopt + alpha * delay;
    software_revenue = d.software_perpetual * s;
  } else {
    d.software_stage1 = adopt;
    d.software_stage2 = alpha * (adopt + delay);
    software_revenue = (adopt + alpha * (adopt + delay)) * s;
  }
  const double total = software_revenue + (b - params.c) * buyers;
  return {d, total};
}

}  // namespace adsgame
