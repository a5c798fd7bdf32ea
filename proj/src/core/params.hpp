#pragma once

namespace adsgame {

// Market primitives. All downstream code assumes an instance was produced
// by validate_params (or scale_params) and never re-checks bounds.
//
//   q      initial driving-system reliability multiplier, q > 1
//   gamma  stage-2 upgrade multiplier, gamma > 1
//   alpha  posterior compatibility probability, 0 < alpha < 1
//   v      per-stage base vehicle utility, v > 0
//   c_v    vehicle cost, 0 < c_v < 2v
//   c_h    support-hardware cost, c_h >= 0
//   t_h    derived, c_h / v
//   c      derived, c_v + c_h
struct ModelParams {
  double q = 0;
  double gamma = 0;
  double alpha = 0;
  double v = 0;
  double c_v = 0;
  double c_h = 0;
  double t_h = 0;
  double c = 0;
};

// Validation strictness. `standard` additionally requires
// gamma > 1 + c_h/v, which guarantees a non-empty adoption region; the
// zero-adoption analyses need parameters outside that region and use
// `allow_low_upgrade`.
enum class ParamRule { standard, allow_low_upgrade };

// Checks all bounds and computes the derived fields. Throws NonFinite for
// NaN/inf input and ConstraintViolation naming the violated bound.
ModelParams validate_params(double q, double gamma, double alpha, double v,
                            double c_v, double c_h,
                            ParamRule rule = ParamRule::standard);

// Multiplies the utility-dimension fields (v, c_v, c_h) by lambda > 0.
// q, gamma, alpha and t_h are unchanged. Throws ConstraintViolation if
// lambda <= 0.
ModelParams scale_params(const ModelParams& p, double lambda);

// Sweepable parameter axes.
enum class Axis { q, alpha, gamma };

constexpr const char* to_string(Axis a) {
  switch (a) {
    case Axis::q: return "q";
    case Axis::alpha: return "alpha";
    case Axis::gamma: return "gamma";
  }
  return "?";
}

// Returns a copy of `p` with the given axis set to `value`, re-validated.
ModelParams with_axis(const ModelParams& p, Axis axis, double value,
                      ParamRule rule = ParamRule::standard);

}  // namespace adsgame
