#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/closed_form.hpp"
#include "core/oracle.hpp"
#include "core/params.hpp"
#include "core/strategy.hpp"

namespace adsgame {

struct AnalysisOptions {
  double epsilon = 1e-6;
  // When set, profits of epsilon-limit rows are charged their worst-case
  // O(epsilon) correction (3 + alpha) / 2 * epsilon, breaking knife-edge
  // ties in favor of perpetual licensing.
  bool strict_epsilon = false;
  unsigned threads = 0;
};

struct RankedProfit {
  Strategy strategy;
  double profit;
  int case_id;
  bool epsilon_limit;
};

// All four strategies by descending equilibrium profit; exact ties break
// in enum order (UP < US < BP < BS).
std::vector<RankedProfit> rank_strategies(const ModelParams& params,
                                          const AnalysisOptions& opt = {});

struct RegionCell {
  double axis1_value = 0;
  double axis2_value = 0;
  Strategy winner = Strategy::UP;
  double winner_profit = 0;
  double gap = 0;  // winner minus runner-up (0 when only one strategy)
  std::array<double, 4> profits{};  // indexed by Strategy; NaN outside subset
  std::array<int, 4> case_ids{};    // -1 outside subset
};

struct RegionMap {
  Axis axis1 = Axis::q;
  Axis axis2 = Axis::alpha;
  std::vector<double> grid1, grid2;
  std::vector<Strategy> subset;
  std::vector<RegionCell> cells;  // axis1-major order

  const RegionCell& at(std::size_t i1, std::size_t i2) const {
    return cells[i1 * grid2.size() + i2];
  }
};

// Per-cell winner among `subset` (all four when empty) over the cross
// product of the two grids.
RegionMap region_map(const ModelParams& fixed, Axis axis1,
                     std::vector<double> grid1, Axis axis2,
                     std::vector<double> grid2,
                     std::vector<Strategy> subset = {},
                     const AnalysisOptions& opt = {});

// Ordered q values where the winner of the (a, b) comparison flips along
// the grid, each refined by bisection.
std::vector<ThresholdEstimate> oscillation_scan(const ModelParams& fixed,
                                                Strategy a, Strategy b,
                                                const std::vector<double>& q_grid,
                                                double tol = 1e-6,
                                                const AnalysisOptions& opt = {});

struct FrontierResult {
  bool dominance = false;
  Strategy winner = Strategy::UP;
  std::optional<ThresholdEstimate> threshold;
};

// Locates a profit crossing of (a, b) along one axis; when the sign never
// flips across the scan the result is a dominance verdict instead (weak
// dominance counts for the strategy whose difference is non-negative).
FrontierResult dominance_frontier(Strategy a, Strategy b,
                                  const ModelParams& fixed, Axis axis,
                                  double lo, double hi, double tol = 1e-6,
                                  int scan_points = 129,
                                  const AnalysisOptions& opt = {});

// Evenly spaced grid over [lo, hi] (closed); n >= 2.
std::vector<double> linspace(double lo, double hi, int n);

// Default sweep grids: q on (1, 5] with 81 points, alpha on [0.05, 0.95]
// with 19 points.
std::vector<double> default_q_grid();
std::vector<double> default_alpha_grid();

}  // namespace adsgame
