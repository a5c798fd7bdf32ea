#include "core/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>

#include "core/closed_form.hpp"
#include "core/demand.hpp"
#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace adsgame {

namespace {

constexpr double kLipschitz = 4.0;  // units of demand per unit price
constexpr int kBehaviorCount = 18;

void validate_spec(const GridSpec& spec) {
  if (spec.points < 16) {
    throw ConstraintViolation("grid resolution must be at least 16");
  }
  if (!(spec.shrink > 0 && spec.shrink < 1)) {
    throw ConstraintViolation("refinement shrink must lie in (0, 1)");
  }
  if (spec.refine_rounds < 0 || spec.top_cells < 1) {
    throw ConstraintViolation("refinement configuration must be positive");
  }
}

// No useful price exceeds the best-case add-on utility (1+g)qv; one extra
// v of headroom keeps the cap strictly above every pricing-table value.
double default_price_cap(const ModelParams& p) {
  return (1 + p.gamma) * p.q * p.v + p.v;
}

struct AxisSetup {
  bool fixed = false;
  double value = 0;  // fixed value
  double lo = 0, hi = 0;
};

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  double x0 = 0, x1 = 0;
};

struct Seed {
  double value;
  double x0, x1;
  std::size_t index;  // linear cell index, for deterministic ranking
};

// One grid pass over window [lo0,hi0] x [lo1,hi1] (degenerate axes have
// lo == hi). Returns the best cell and, if wanted, the top `top` cells.
template <typename F>
Best grid_pass(const F& f, const AxisSetup& a0, const AxisSetup& a1,
               double lo0, double hi0, double lo1, double hi1, int points,
               unsigned threads, int top, std::vector<Seed>* seeds) {
  const int n0 = a0.fixed ? 1 : points;
  const int n1 = a1.fixed ? 1 : points;
  const double step0 = n0 > 1 ? (hi0 - lo0) / (n0 - 1) : 0;
  const double step1 = n1 > 1 ? (hi1 - lo1) / (n1 - 1) : 0;

  const std::size_t rows = static_cast<std::size_t>(n0);
  std::vector<std::vector<Seed>> row_tops(rows);
  std::vector<Best> row_best(rows);

  parallel_chunks(rows, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double x0 = a0.fixed ? a0.value : lo0 + step0 * static_cast<double>(i);
      Best local;
      std::vector<Seed>& tops = row_tops[i];
      for (int j = 0; j < n1; ++j) {
        const double x1 = a1.fixed ? a1.value : lo1 + step1 * j;
        const double val = f(x0, x1);
        if (val > local.value) local = {val, x0, x1};
        if (seeds) {
          tops.push_back({val, x0, x1, i * static_cast<std::size_t>(n1) +
                                            static_cast<std::size_t>(j)});
          std::sort(tops.begin(), tops.end(), [](const Seed& a, const Seed& b) {
            return a.value != b.value ? a.value > b.value : a.index < b.index;
          });
          if (static_cast<int>(tops.size()) > top) tops.resize(top);
        }
      }
      row_best[i] = local;
    }
  });

  Best best;
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_best[i].value > best.value) best = row_best[i];
  }
  if (seeds) {
    seeds->clear();
    for (auto& tops : row_tops) {
      seeds->insert(seeds->end(), tops.begin(), tops.end());
    }
    std::sort(seeds->begin(), seeds->end(), [](const Seed& a, const Seed& b) {
      return a.value != b.value ? a.value > b.value : a.index < b.index;
    });
    if (static_cast<int>(seeds->size()) > top) seeds->resize(top);
  }
  return best;
}

// Full search: one exhaustive pass plus shrinking re-grids around the top
// cells. Returns the best point found and the final per-axis pitch.
template <typename F>
Best refined_search(const F& f, const AxisSetup& a0, const AxisSetup& a1,
                    const GridSpec& spec, double* final_pitch0,
                    double* final_pitch1) {
  const int free_axes = (a0.fixed ? 0 : 1) + (a1.fixed ? 0 : 1);
  const double round_cells =
      std::pow(static_cast<double>(spec.points), free_axes);
  const double total_cells =
      round_cells * (1.0 + static_cast<double>(spec.top_cells) *
                               static_cast<double>(spec.refine_rounds));
  if (total_cells > spec.budget_cells) {
    throw BudgetExceeded("grid search would exceed the configured cell budget");
  }

  const double span0 = a0.fixed ? 0 : a0.hi - a0.lo;
  const double span1 = a1.fixed ? 0 : a1.hi - a1.lo;

  std::vector<Seed> seeds;
  Best best = grid_pass(f, a0, a1, a0.lo, a0.hi, a1.lo, a1.hi, spec.points,
                        spec.threads, spec.top_cells, &seeds);

  for (const Seed& seed : seeds) {
    double cx0 = seed.x0, cx1 = seed.x1;
    Best branch{seed.value, seed.x0, seed.x1};
    for (int r = 1; r <= spec.refine_rounds; ++r) {
      const double w0 = span0 * std::pow(spec.shrink, r);
      const double w1 = span1 * std::pow(spec.shrink, r);
      const double lo0 = std::max(a0.lo, cx0 - w0 / 2);
      const double hi0 = std::min(a0.hi, cx0 + w0 / 2);
      const double lo1 = std::max(a1.lo, cx1 - w1 / 2);
      const double hi1 = std::min(a1.hi, cx1 + w1 / 2);
      const Best round =
          grid_pass(f, a0, a1, lo0, hi0, lo1, hi1, spec.points, spec.threads,
                    spec.top_cells, nullptr);
      if (round.value > branch.value) branch = round;
      cx0 = branch.x0;
      cx1 = branch.x1;
    }
    if (branch.value > best.value) best = branch;
  }

  const double denom = spec.points - 1;
  const double shrink_total = std::pow(spec.shrink, spec.refine_rounds);
  *final_pitch0 = a0.fixed ? 0 : span0 * shrink_total / denom;
  *final_pitch1 = a1.fixed ? 0 : span1 * shrink_total / denom;
  return best;
}

}  // namespace

double binomial_std_error(double p, std::uint64_t n) {
  return std::sqrt(p * (1 - p) / static_cast<double>(n));
}

OracleResult optimize_prices(Strategy strategy, const ModelParams& params,
                             const GridSpec& spec,
                             const PriceConstraints& constraints) {
  validate_spec(spec);
  const double cap = default_price_cap(params);
  const double vehicle = 2 * params.v;  // profit is linear in this price

  AxisSetup hardware, software;
  if (is_bundled(strategy)) {
    hardware.fixed = true;
    hardware.value = 0;
  } else if (constraints.hardware) {
    hardware.fixed = true;
    hardware.value = *constraints.hardware;
  } else {
    hardware.lo = 0;
    hardware.hi = spec.hardware_hi ? std::max(*spec.hardware_hi, cap) : cap;
  }
  if (constraints.software) {
    software.fixed = true;
    software.value = *constraints.software;
  } else {
    software.lo = 0;
    software.hi = spec.software_hi ? std::max(*spec.software_hi, cap) : cap;
  }

  const auto eval = [&](double h, double s) {
    return profit(strategy, params,
                  PriceDecision::make(strategy, vehicle, h, s));
  };

  double pitch0 = 0, pitch1 = 0;
  const Best best =
      refined_search(eval, hardware, software, spec, &pitch0, &pitch1);

  OracleResult out;
  out.best_prices = PriceDecision::make(strategy, vehicle, best.x0, best.x1);
  out.best_profit = best.value;
  out.resolution_bound = kLipschitz * (pitch0 + pitch1) / 2;
  return out;
}

RestrictedOracleResult optimize_restricted(const ModelParams& params,
                                           SoftwareMode mode,
                                           const GridSpec& spec) {
  validate_spec(spec);
  const double v = params.v;
  const double cap = default_price_cap(params);

  AxisSetup bundle, software;
  bundle.lo = 2 * v * (1 + 1e-9);  // strictly above the full-market cap
  bundle.hi = 2 * v + cap;
  software.lo = 0;
  software.hi = cap;

  const auto eval = [&](double b, double s) {
    return restricted_demand_profit(params, b, s, mode).second;
  };

  double pitch0 = 0, pitch1 = 0;
  const Best best =
      refined_search(eval, bundle, software, spec, &pitch0, &pitch1);

  RestrictedOracleResult out;
  out.bundle_price = best.x0;
  out.software_price = best.x1;
  out.best_profit = best.value;
  out.resolution_bound = kLipschitz * (pitch0 + pitch1) / 2;
  return out;
}

McDemand mc_demand(Strategy strategy, const ModelParams& params,
                   const PriceDecision& prices, std::uint64_t n,
                   std::uint64_t seed, unsigned threads) {
  require_strategy(prices, strategy);
  if (n < 10000) throw ConstraintViolation("n must be at least 10^4");
  if (prices.vehicle > 2 * params.v) {
    throw RestrictedPricing(
        "vehicle/bundle price exceeds 2v; the simulator covers the full "
        "market only");
  }

  const double v = params.v, q = params.q, g = params.gamma;
  const double alpha = params.alpha;
  const double slope_adopt = v * (1 + g) * q;
  const double slope_delay = v * g * q;
  double icpt_adopt = 0, icpt_delay = 0, util_never = 0;
  const double pv = prices.vehicle, ph = prices.hardware, ps = prices.software;
  switch (strategy) {
    case Strategy::UP:
      icpt_adopt = -(ps + pv + ph);
      icpt_delay = v - (ps + pv + ph);
      break;
    case Strategy::US:
      icpt_adopt = -(2 * ps + pv + ph);
      icpt_delay = v - (ps + pv + ph);
      break;
    case Strategy::BP:
      icpt_adopt = -(ps + pv);
      icpt_delay = v - (ps + pv);
      break;
    case Strategy::BS:
      icpt_adopt = -(2 * ps + pv);
      icpt_delay = v - (ps + pv);
      break;
  }
  util_never = 2 * v - pv;

  using Counts = std::array<std::uint64_t, kBehaviorCount>;
  const unsigned workers = resolve_threads(threads);
  std::vector<Counts> prog_counts(workers), cons_counts(workers);
  for (auto& c : prog_counts) c.fill(0);
  for (auto& c : cons_counts) c.fill(0);

  std::mutex slot_mutex;
  unsigned next_slot = 0;

  parallel_chunks(n, workers, [&](std::size_t begin, std::size_t end) {
    unsigned slot;
    {
      std::lock_guard<std::mutex> lock(slot_mutex);
      slot = next_slot++;
    }
    Counts& prog = prog_counts[slot];
    Counts& cons = cons_counts[slot];

    for (std::size_t i = begin; i < end; ++i) {
      // Progressive agent: pick the stage-1 plan with maximal utility;
      // ties resolve toward the plan with more add-on usage.
      const std::uint64_t stream_p = 2 * static_cast<std::uint64_t>(i);
      const double theta = rng::u01(seed, stream_p, 0);
      const double u_adopt = icpt_adopt + slope_adopt * theta;
      const double u_delay = icpt_delay + slope_delay * theta;
      int plan;  // 0 adopt, 1 delay, 2 never
      if (u_adopt >= u_delay && u_adopt >= util_never) {
        plan = 0;
      } else if (u_delay >= util_never) {
        plan = 1;
      } else {
        plan = 2;
      }
      const bool compat = rng::u01(seed, stream_p, 1) < alpha;
      Behavior b = Behavior::NNN;
      switch (strategy) {
        case Strategy::UP:
          b = plan == 0 ? Behavior::PPH
                        : plan == 1 ? (compat ? Behavior::PDP : Behavior::PDN)
                                    : Behavior::NNN;
          break;
        case Strategy::US:
          b = plan == 0 ? (compat ? Behavior::PSS : Behavior::PSN)
                        : plan == 1 ? (compat ? Behavior::PDS : Behavior::PDN)
                                    : Behavior::NNN;
          break;
        case Strategy::BP:
          b = plan == 0 ? Behavior::PH
                        : plan == 1 ? (compat ? Behavior::DP : Behavior::DN)
                                    : Behavior::NN;
          break;
        case Strategy::BS:
          b = plan == 0 ? (compat ? Behavior::SS : Behavior::SN)
                        : plan == 1 ? (compat ? Behavior::DS : Behavior::DN)
                                    : Behavior::NN;
          break;
      }
      ++prog[static_cast<std::size_t>(b)];

      // Conservative agent: stays out in stage 1; under a bundled strategy
      // a compatible draw re-enters in stage 2 when the upgraded add-on
      // beats plain vehicle use.
      const std::uint64_t stream_c = stream_p + 1;
      const double theta_c = rng::u01(seed, stream_c, 0);
      Behavior bc = is_bundled(strategy) ? Behavior::NN : Behavior::NNN;
      if (is_bundled(strategy)) {
        const bool compat_c = rng::u01(seed, stream_c, 1) < alpha;
        if (compat_c && v * theta_c * g * q - ps >= v) {
          bc = strategy == Strategy::BP ? Behavior::NP : Behavior::NS;
        }
      }
      ++cons[static_cast<std::size_t>(bc)];
    }
  });

  Counts prog{}, cons{};
  for (unsigned w = 0; w < workers; ++w) {
    for (int b = 0; b < kBehaviorCount; ++b) {
      prog[static_cast<std::size_t>(b)] += prog_counts[w][static_cast<std::size_t>(b)];
      cons[static_cast<std::size_t>(b)] += cons_counts[w][static_cast<std::size_t>(b)];
    }
  }

  // Report the same (behavior, class) slots as the analytic profile.
  McDemand out;
  out.strategy = strategy;
  out.n = n;
  out.seed = seed;
  const auto push = [&](Behavior b, ConsumerClass c) {
    const Counts& table = c == ConsumerClass::progressive ? prog : cons;
    const std::uint64_t count = table[static_cast<std::size_t>(b)];
    const double freq = static_cast<double>(count) / static_cast<double>(n);
    out.behaviors.push_back({b, c, count, freq, binomial_std_error(freq, n)});
    return freq;
  };

  using CC = ConsumerClass;
  switch (strategy) {
    case Strategy::UP: {
      const double pph = push(Behavior::PPH, CC::progressive);
      const double pdp = push(Behavior::PDP, CC::progressive);
      const double pdn = push(Behavior::PDN, CC::progressive);
      push(Behavior::NNN, CC::progressive);
      push(Behavior::NNN, CC::conservative);
      out.software_stage1 = pph;
      out.software_stage2 = pdp;
      out.software_perpetual = pph + pdp;
      out.ssh_units = pph + pdp + pdn;
      break;
    }
    case Strategy::US: {
      const double pss = push(Behavior::PSS, CC::progressive);
      const double psn = push(Behavior::PSN, CC::progressive);
      const double pds = push(Behavior::PDS, CC::progressive);
      const double pdn = push(Behavior::PDN, CC::progressive);
      push(Behavior::NNN, CC::progressive);
      push(Behavior::NNN, CC::conservative);
      out.software_stage1 = pss + psn;
      out.software_stage2 = pss + pds;
      out.ssh_units = pss + psn + pds + pdn;
      break;
    }
    case Strategy::BP: {
      const double ph_ = push(Behavior::PH, CC::progressive);
      const double dp = push(Behavior::DP, CC::progressive);
      push(Behavior::DN, CC::progressive);
      push(Behavior::NN, CC::progressive);
      const double np = push(Behavior::NP, CC::conservative);
      push(Behavior::NN, CC::conservative);
      out.software_stage1 = ph_;
      out.software_stage2 = dp + np;
      out.software_perpetual = ph_ + dp + np;
      out.ssh_units = 2;
      break;
    }
    case Strategy::BS: {
      const double ss = push(Behavior::SS, CC::progressive);
      const double sn = push(Behavior::SN, CC::progressive);
      const double ds = push(Behavior::DS, CC::progressive);
      push(Behavior::DN, CC::progressive);
      push(Behavior::NN, CC::progressive);
      const double ns = push(Behavior::NS, CC::conservative);
      push(Behavior::NN, CC::conservative);
      out.software_stage1 = ss + sn;
      out.software_stage2 = ss + ds + ns;
      out.ssh_units = 2;
      break;
    }
  }
  out.vehicle_units = 2;
  return out;
}

ThresholdEstimate find_threshold(Strategy a, Strategy b,
                                 const ModelParams& base, Axis axis,
                                 double lo, double hi, double tol,
                                 const std::string& name) {
  if (!(lo < hi) || !(tol > 0)) {
    throw ConstraintViolation("bracket must satisfy lo < hi with tol > 0");
  }
  const auto diff = [&](double x) {
    const ModelParams p = with_axis(base, axis, x);
    return equilibrium_profit(a, p).profit - equilibrium_profit(b, p).profit;
  };

  double f_lo = diff(lo), f_hi = diff(hi);
  const auto sgn = [](double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); };
  if (sgn(f_lo) == 0 || sgn(f_hi) == 0 || sgn(f_lo) == sgn(f_hi)) {
    throw NoSignChange("profit difference has no sign change on the bracket");
  }

  double mid = 0.5 * (lo + hi), f_mid = 0;
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    f_mid = diff(mid);
    if (sgn(f_mid) == sgn(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
    const bool narrow = (hi - lo) <= tol;
    if (narrow && std::abs(f_mid) <= 1e-6) break;
    if (narrow && (hi - lo) <= 1e-15 * std::max(1.0, std::abs(mid))) break;
  }

  ThresholdEstimate est;
  est.name = name.empty() ? std::string(to_string(a)) + "/" + to_string(b) +
                                " switch on " + to_string(axis)
                          : name;
  est.value = 0.5 * (lo + hi);
  est.lo = lo;
  est.hi = hi;
  est.tol = tol;
  est.sign_lo = sgn(f_lo);
  est.sign_hi = sgn(f_hi);
  return est;
}

}  // namespace adsgame
