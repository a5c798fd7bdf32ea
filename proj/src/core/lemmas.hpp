#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/oracle.hpp"
#include "core/params.hpp"

namespace adsgame {

// Structural claims about the pricing tables, each checked numerically on
// a parameter grid. The report carries the first counterexample found.
//
//   1  packaging: the unbundled-perpetual search optimum is unchanged when
//      the license price is pinned to 0 (hardware carries all revenue)
//   2  zero adoption: with c_h >= v(gamma-1) and q <= (c_h+2v)/(v+v gamma)
//      the equilibrium add-on demand is exactly 0 and profit is 2(2v-c_v)
//   3  bundled-perpetual license price is non-decreasing in q, and flat at
//      v(gamma-1) on its predicted interval for low alpha
//   4  both bundled-subscription price branches increase strictly in q and
//      the high-reliability branch sits strictly below the low one
//   5  pricing the bundle above 2v is strictly worse than the full-market
//      optimum
//   6  the mass of consumers deferring their first software payment to
//      stage 2 is non-increasing in q at equilibrium (US/BP/BS) and
//      identically zero under UP
struct LemmaReport {
  int lemma = 0;
  std::string name;
  bool pass = true;
  long checks = 0;
  std::string counterexample;  // empty when pass
};

struct LemmaOptions {
  GridSpec oracle_spec;        // used by lemmas 1 and 5
  int lemma5_samples = 20;
  std::uint64_t seed = 1;
  double epsilon = 1e-6;
  // Hardware cost (as a multiple of v) used to enter the zero-adoption
  // region for lemma 2; must satisfy c_h >= v (gamma - 1) for the grid's
  // gamma.
  double lemma2_hardware_cost = 0.4;
  unsigned threads = 0;

  LemmaOptions() {
    oracle_spec.points = 128;
    oracle_spec.refine_rounds = 2;
    oracle_spec.top_cells = 2;
  }
};

// Runs all six checks over the given parameter collection. Scan-line
// checks (3, 4, 6) group the collection by every field except q and walk
// each line in ascending q.
std::vector<LemmaReport> lemma_checks(const std::vector<ModelParams>& grid,
                                      const LemmaOptions& opt = {});

// Grid helper: the cross product of q and alpha values at otherwise fixed
// parameters.
std::vector<ModelParams> params_grid(const ModelParams& base,
                                     const std::vector<double>& q_values,
                                     const std::vector<double>& alpha_values);

}  // namespace adsgame
