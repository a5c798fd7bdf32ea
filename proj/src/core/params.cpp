#include "core/params.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace adsgame {

namespace {

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    throw NonFinite(std::string(name) + " must be finite");
  }
}

}  // namespace

ModelParams validate_params(double q, double gamma, double alpha, double v,
                            double c_v, double c_h, ParamRule rule) {
  require_finite(q, "q");
  require_finite(gamma, "gamma");
  require_finite(alpha, "alpha");
  require_finite(v, "v");
  require_finite(c_v, "c_v");
  require_finite(c_h, "c_h");

  if (!(v > 0)) throw ConstraintViolation("v must be positive");
  if (!(q > 1)) throw ConstraintViolation("q must exceed 1");
  if (!(gamma > 1)) throw ConstraintViolation("gamma must exceed 1");
  if (!(alpha > 0 && alpha < 1)) {
    throw ConstraintViolation("alpha must lie strictly between 0 and 1");
  }
  if (!(c_v > 0 && c_v < 2 * v)) {
    throw ConstraintViolation("c_v must lie strictly between 0 and 2v");
  }
  if (!(c_h >= 0)) throw ConstraintViolation("c_h must be non-negative");

  ModelParams p;
  p.q = q;
  p.gamma = gamma;
  p.alpha = alpha;
  p.v = v;
  p.c_v = c_v;
  p.c_h = c_h;
  p.t_h = c_h / v;
  p.c = c_v + c_h;

  if (rule == ParamRule::standard && !(gamma > 1 + p.t_h)) {
    throw ConstraintViolation("gamma must exceed 1 + c_h/v");
  }
  return p;
}

ModelParams scale_params(const ModelParams& p, double lambda) {
  if (!std::isfinite(lambda)) throw NonFinite("lambda must be finite");
  if (!(lambda > 0)) throw ConstraintViolation("lambda must be positive");
  ModelParams out = p;
  out.v = p.v * lambda;
  out.c_v = p.c_v * lambda;
  out.c_h = p.c_h * lambda;
  out.c = out.c_v + out.c_h;
  // t_h is dimensionless and must not pick up rounding from the rescale.
  out.t_h = p.t_h;
  return out;
}

ModelParams with_axis(const ModelParams& p, Axis axis, double value,
                      ParamRule rule) {
  double q = p.q, alpha = p.alpha, gamma = p.gamma;
  switch (axis) {
    case Axis::q: q = value; break;
    case Axis::alpha: alpha = value; break;
    case Axis::gamma: gamma = value; break;
  }
  return validate_params(q, gamma, alpha, p.v, p.c_v, p.c_h, rule);
}

}  // namespace adsgame
