#pragma once

#include <cstdint>
#include <string>

#include "core/oracle.hpp"
#include "core/params.hpp"

namespace adsgame {

// Closed-form vs grid-search cross validation over seeded random draws
// from the box q in (1,5], alpha in [0.05,0.95], t_h in [0,0.5],
// gamma in (1+t_h, 3.5], with v = 1 and c_v = 1.
struct ValidationDraw {
  ModelParams params;
  Strategy strategy;
  double closed_form = 0;
  double oracle = 0;
  double resolution_bound = 0;
};

struct ValidationReport {
  int samples = 0;
  std::uint64_t seed = 0;
  // max over draws of closed_form - oracle (how far the search lagged the
  // formula; must stay within the resolution bound)
  double max_shortfall = 0;
  // max over draws of oracle - closed_form (a positive value beyond 1e-6
  // means the formula is not an optimum)
  double max_oracle_excess = 0;
  bool pass = true;
  ValidationDraw worst;  // the draw with the largest violation (or gap)
  std::string failure;   // empty when pass
};

ModelParams draw_params(std::uint64_t seed, std::uint64_t index);

ValidationReport validate_closed_form(int samples, std::uint64_t seed,
                                      const GridSpec& spec = {},
                                      unsigned threads = 0);

}  // namespace adsgame
