#pragma once

#include "core/errors.hpp"
#include "core/strategy.hpp"

namespace adsgame {

// Strategy-tagged price vector.
//
//   UP: vehicle = p_v, hardware = p_h, software = p_s
//   US: vehicle = p_v, hardware = p_h, software = r_s (per stage)
//   BP: vehicle = p_b (bundle),        software = p_s
//   BS: vehicle = p_b (bundle),        software = r_s (per stage)
//
// `hardware` is meaningful only for the unbundled strategies and is kept
// at zero otherwise.
struct PriceDecision {
  Strategy strategy = Strategy::UP;
  double vehicle = 0;
  double hardware = 0;
  double software = 0;

  static PriceDecision up(double p_v, double p_h, double p_s) {
    return make(Strategy::UP, p_v, p_h, p_s);
  }
  static PriceDecision us(double p_v, double p_h, double r_s) {
    return make(Strategy::US, p_v, p_h, r_s);
  }
  static PriceDecision bp(double p_b, double p_s) {
    return make(Strategy::BP, p_b, 0, p_s);
  }
  static PriceDecision bs(double p_b, double r_s) {
    return make(Strategy::BS, p_b, 0, r_s);
  }

  static PriceDecision make(Strategy s, double vehicle, double hardware,
                            double software) {
    if (vehicle < 0 || hardware < 0 || software < 0) {
      throw ConstraintViolation("prices must be non-negative");
    }
    if (is_bundled(s) && hardware != 0) {
      throw ConstraintViolation(
          "bundled strategies have no separate hardware price");
    }
    PriceDecision p;
    p.strategy = s;
    p.vehicle = vehicle;
    p.hardware = hardware;
    p.software = software;
    return p;
  }
};

inline void require_strategy(const PriceDecision& prices, Strategy s) {
  if (prices.strategy != s) {
    throw StrategyMismatch(std::string("prices are tagged ") +
                           to_string(prices.strategy) + " but the operation " +
                           "expects " + to_string(s));
  }
}

}  // namespace adsgame
