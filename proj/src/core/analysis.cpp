#include "core/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace adsgame {

namespace {

double adjusted_profit(const EquilibriumValue& value, const ModelParams& p,
                       const AnalysisOptions& opt) {
  if (opt.strict_epsilon && value.epsilon_limit) {
    return value.profit - (3 + p.alpha) / 2 * opt.epsilon;
  }
  return value.profit;
}

// Winner of the pairwise comparison with enum-order tie-break.
Strategy pair_winner(const ModelParams& p, Strategy a, Strategy b,
                     const AnalysisOptions& opt) {
  const double pa = adjusted_profit(equilibrium_profit(a, p), p, opt);
  const double pb = adjusted_profit(equilibrium_profit(b, p), p, opt);
  if (pa > pb) return a;
  if (pb > pa) return b;
  return static_cast<int>(a) <= static_cast<int>(b) ? a : b;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw ConstraintViolation("grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  }
  return g;
}

std::vector<double> default_q_grid() {
  // 81 points on (1, 5]: the open end at 1 is excluded by stepping from
  // 1 + step.
  std::vector<double> g(81);
  for (int i = 0; i < 81; ++i) g[static_cast<std::size_t>(i)] = 1 + 4.0 * (i + 1) / 81.0;
  return g;
}

std::vector<double> default_alpha_grid() { return linspace(0.05, 0.95, 19); }

std::vector<RankedProfit> rank_strategies(const ModelParams& params,
                                          const AnalysisOptions& opt) {
  std::vector<RankedProfit> out;
  out.reserve(4);
  for (Strategy s : kAllStrategies) {
    const EquilibriumValue v = equilibrium_profit(s, params);
    out.push_back(
        {s, adjusted_profit(v, params, opt), v.case_id, v.epsilon_limit});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedProfit& a, const RankedProfit& b) {
                     if (a.profit != b.profit) return a.profit > b.profit;
                     return static_cast<int>(a.strategy) <
                            static_cast<int>(b.strategy);
                   });
  return out;
}

RegionMap region_map(const ModelParams& fixed, Axis axis1,
                     std::vector<double> grid1, Axis axis2,
                     std::vector<double> grid2, std::vector<Strategy> subset,
                     const AnalysisOptions& opt) {
  if (axis1 == axis2) throw ConstraintViolation("region axes must differ");
  if (subset.empty()) {
    subset.assign(kAllStrategies.begin(), kAllStrategies.end());
  }

  RegionMap map;
  map.axis1 = axis1;
  map.axis2 = axis2;
  map.grid1 = std::move(grid1);
  map.grid2 = std::move(grid2);
  map.subset = subset;
  map.cells.resize(map.grid1.size() * map.grid2.size());

  const std::size_t n2 = map.grid2.size();
  parallel_chunks(map.cells.size(), opt.threads,
                  [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const double v1 = map.grid1[k / n2];
      const double v2 = map.grid2[k % n2];
      const ModelParams p =
          with_axis(with_axis(fixed, axis1, v1), axis2, v2);

      RegionCell cell;
      cell.axis1_value = v1;
      cell.axis2_value = v2;
      cell.profits.fill(std::numeric_limits<double>::quiet_NaN());
      cell.case_ids.fill(-1);

      double best = -std::numeric_limits<double>::infinity();
      double second = best;
      Strategy winner = subset.front();
      for (Strategy s : subset) {
        const EquilibriumValue v = equilibrium_profit(s, p);
        const double value = adjusted_profit(v, p, opt);
        cell.profits[static_cast<std::size_t>(s)] = value;
        cell.case_ids[static_cast<std::size_t>(s)] = v.case_id;
        if (value > best) {
          second = best;
          best = value;
          winner = s;
        } else if (value > second) {
          second = value;
        }
      }
      cell.winner = winner;
      cell.winner_profit = best;
      cell.gap = subset.size() > 1 ? best - second : 0;
      map.cells[k] = cell;
    }
  });
  return map;
}

std::vector<ThresholdEstimate> oscillation_scan(
    const ModelParams& fixed, Strategy a, Strategy b,
    const std::vector<double>& q_grid, double tol,
    const AnalysisOptions& opt) {
  if (q_grid.size() < 2) {
    throw ConstraintViolation("scan grid needs at least 2 points");
  }
  std::vector<ThresholdEstimate> switches;
  Strategy prev = pair_winner(with_axis(fixed, Axis::q, q_grid.front()), a, b,
                              opt);
  for (std::size_t i = 1; i < q_grid.size(); ++i) {
    const Strategy cur =
        pair_winner(with_axis(fixed, Axis::q, q_grid[i]), a, b, opt);
    if (cur != prev) {
      ThresholdEstimate est =
          find_threshold(a, b, fixed, Axis::q, q_grid[i - 1], q_grid[i], tol);
      est.name = std::string(to_string(a)) + "/" + to_string(b) +
                 " switch " + std::to_string(switches.size() + 1);
      switches.push_back(est);
      prev = cur;
    }
  }
  return switches;
}

FrontierResult dominance_frontier(Strategy a, Strategy b,
                                  const ModelParams& fixed, Axis axis,
                                  double lo, double hi, double tol,
                                  int scan_points, const AnalysisOptions& opt) {
  const std::vector<double> grid = linspace(lo, hi, scan_points);
  std::vector<double> diff(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ModelParams p = with_axis(fixed, axis, grid[i]);
    diff[i] = adjusted_profit(equilibrium_profit(a, p), p, opt) -
              adjusted_profit(equilibrium_profit(b, p), p, opt);
  }

  for (std::size_t i = 0; i + 1 < diff.size(); ++i) {
    if (diff[i] * diff[i + 1] < 0) {
      FrontierResult res;
      res.dominance = false;
      res.threshold =
          find_threshold(a, b, fixed, axis, grid[i], grid[i + 1], tol);
      res.winner = diff[i] > 0 ? a : b;  // winner on the low side
      return res;
    }
  }

  // No adjacent strict sign change. Exact zeros may still separate strict
  // signs; if both strict signs occur, bisect between their first
  // occurrences.
  std::ptrdiff_t first_pos = -1, first_neg = -1;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    if (diff[i] > 0 && first_pos < 0) first_pos = static_cast<std::ptrdiff_t>(i);
    if (diff[i] < 0 && first_neg < 0) first_neg = static_cast<std::ptrdiff_t>(i);
  }
  if (first_pos >= 0 && first_neg >= 0) {
    const std::size_t i = static_cast<std::size_t>(std::min(first_pos, first_neg));
    const std::size_t j = static_cast<std::size_t>(std::max(first_pos, first_neg));
    FrontierResult res;
    res.dominance = false;
    res.threshold = find_threshold(a, b, fixed, axis, grid[i], grid[j], tol);
    res.winner = diff[i] > 0 ? a : b;
    return res;
  }

  FrontierResult res;
  res.dominance = true;
  if (first_neg < 0) {
    res.winner = a;  // never strictly behind (weak dominance, ties to a)
  } else {
    res.winner = b;
  }
  return res;
}

}  // namespace adsgame
