#include "core/validate.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "core/closed_form.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace adsgame {

ModelParams draw_params(std::uint64_t seed, std::uint64_t index) {
  const double th = 0.5 * rng::u01(seed, index, 0);
  const double q = 1 + 4 * rng::u01_open_low(seed, index, 1);
  const double gamma = (1 + th) + (2.5 - th) * rng::u01_open_low(seed, index, 2);
  const double alpha = 0.05 + 0.9 * rng::u01(seed, index, 3);
  return validate_params(q, gamma, alpha, 1.0, 1.0, th);
}

ValidationReport validate_closed_form(int samples, std::uint64_t seed,
                                      const GridSpec& spec, unsigned threads) {
  ValidationReport report;
  report.samples = samples;
  report.seed = seed;

  const std::size_t total = static_cast<std::size_t>(samples) * 4;
  std::vector<ValidationDraw> draws(total);

  // Each draw runs its own single-threaded search; parallelism is across
  // draws so results are independent of the thread count.
  GridSpec draw_spec = spec;
  draw_spec.threads = 1;
  parallel_chunks(total, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const std::uint64_t index = k / 4;
      const Strategy s = kAllStrategies[k % 4];
      ValidationDraw d;
      d.params = draw_params(seed, index);
      d.strategy = s;
      d.closed_form = equilibrium_profit(s, d.params).profit;
      const OracleResult orc = optimize_prices(s, d.params, draw_spec);
      d.oracle = orc.best_profit;
      d.resolution_bound = orc.resolution_bound;
      draws[k] = d;
    }
  });

  double worst_violation = -1;
  for (const ValidationDraw& d : draws) {
    const double shortfall = d.closed_form - d.oracle;
    const double excess = d.oracle - d.closed_form;
    report.max_shortfall = std::max(report.max_shortfall, shortfall);
    report.max_oracle_excess = std::max(report.max_oracle_excess, excess);

    double violation = 0;
    std::string reason;
    if (shortfall > d.resolution_bound) {
      violation = shortfall - d.resolution_bound;
      reason = "closed form exceeds the search optimum beyond its "
               "resolution bound";
    }
    if (excess > 1e-6 && excess > violation) {
      violation = excess;
      reason = "grid search found prices beating the closed form";
    }
    if (violation > worst_violation) {
      worst_violation = violation;
      report.worst = d;
      if (violation > 0) {
        std::ostringstream msg;
        msg << reason << ": strategy " << to_string(d.strategy) << " at q="
            << d.params.q << " gamma=" << d.params.gamma
            << " alpha=" << d.params.alpha << " t_h=" << d.params.t_h
            << " closed=" << d.closed_form << " oracle=" << d.oracle
            << " bound=" << d.resolution_bound;
        report.failure = msg.str();
        report.pass = false;
      }
    }
  }
  return report;
}

}  // namespace adsgame
