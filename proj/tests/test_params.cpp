#include <limits>

#include "doctest.h"

#include "core/errors.hpp"
#include "core/params.hpp"

using namespace adsgame;

namespace {

ModelParams baseline() { return validate_params(2, 1.3, 0.6, 1, 1, 0.1); }

}  // namespace

TEST_CASE("validate_params accepts the baseline calibration") {
  const ModelParams p = baseline();
  CHECK(p.t_h == 0.1);
  CHECK(p.c == 1.1);
  CHECK(p.q == 2);
  CHECK(p.gamma == 1.3);
}

TEST_CASE("validate_params rejects out-of-range values by name") {
  CHECK_THROWS_WITH_AS(validate_params(1, 1.3, 0.6, 1, 1, 0.1),
                       "q must exceed 1", ConstraintViolation);
  CHECK_THROWS_WITH_AS(validate_params(2, 1.05, 0.6, 1, 1, 0.1),
                       "gamma must exceed 1 + c_h/v", ConstraintViolation);
  CHECK_THROWS_AS(validate_params(2, 1.3, 0.0, 1, 1, 0.1), ConstraintViolation);
  CHECK_THROWS_AS(validate_params(2, 1.3, 1.0, 1, 1, 0.1), ConstraintViolation);
  CHECK_THROWS_AS(validate_params(2, 1.3, 0.6, 1, 0, 0.1), ConstraintViolation);
  CHECK_THROWS_AS(validate_params(2, 1.3, 0.6, 1, 2, 0.1), ConstraintViolation);
  CHECK_THROWS_AS(validate_params(2, 1.3, 0.6, 1, 1, -0.1), ConstraintViolation);
  CHECK_THROWS_AS(validate_params(2, 1.3, 0.6, 0, 1, 0.1), ConstraintViolation);
  CHECK_THROWS_AS(validate_params(2, 0.9, 0.6, 1, 1, 0.0), ConstraintViolation);
}

TEST_CASE("validate_params flags non-finite input before bounds") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate_params(nan, 1.3, 0.6, 1, 1, 0.1), NonFinite);
  CHECK_THROWS_AS(validate_params(2, inf, 0.6, 1, 1, 0.1), NonFinite);
  CHECK_THROWS_AS(validate_params(2, 1.3, 0.6, 1, 1, -inf), NonFinite);
}

TEST_CASE("relaxed rule admits the zero-adoption regime") {
  CHECK_THROWS_AS(validate_params(1.02, 1.3, 0.6, 1, 1, 0.4),
                  ConstraintViolation);
  const ModelParams p =
      validate_params(1.02, 1.3, 0.6, 1, 1, 0.4, ParamRule::allow_low_upgrade);
  CHECK(p.t_h == 0.4);
  // gamma > 1 stays a hard bound even under the relaxed rule
  CHECK_THROWS_AS(
      validate_params(1.02, 1.0, 0.6, 1, 1, 0.4, ParamRule::allow_low_upgrade),
      ConstraintViolation);
}

TEST_CASE("validation is idempotent on accepted input") {
  const ModelParams p = baseline();
  const ModelParams again =
      validate_params(p.q, p.gamma, p.alpha, p.v, p.c_v, p.c_h);
  CHECK(again.q == p.q);
  CHECK(again.t_h == p.t_h);
  CHECK(again.c == p.c);
}

TEST_CASE("scale_params rescales the utility dimension only") {
  const ModelParams p = baseline();

  const ModelParams doubled = scale_params(p, 2);
  CHECK(doubled.v == 2);
  CHECK(doubled.c_v == 2);
  CHECK(doubled.c_h == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(doubled.t_h == p.t_h);
  CHECK(doubled.q == p.q);
  CHECK(doubled.gamma == p.gamma);
  CHECK(doubled.alpha == p.alpha);

  const ModelParams same = scale_params(p, 1);
  CHECK(same.v == p.v);
  CHECK(same.c_v == p.c_v);
  CHECK(same.c_h == p.c_h);

  const ModelParams halved = scale_params(p, 0.5);
  CHECK(halved.v == 0.5);
  CHECK(halved.c_v == 0.5);
  CHECK(halved.c_h == doctest::Approx(0.05).epsilon(1e-15));

  CHECK_THROWS_AS(scale_params(p, 0), ConstraintViolation);
  CHECK_THROWS_AS(scale_params(p, -1), ConstraintViolation);
}

TEST_CASE("with_axis swaps a single field and re-validates") {
  const ModelParams p = baseline();
  CHECK(with_axis(p, Axis::q, 3).q == 3);
  CHECK(with_axis(p, Axis::alpha, 0.25).alpha == 0.25);
  CHECK(with_axis(p, Axis::gamma, 2.0).gamma == 2.0);
  CHECK_THROWS_AS(with_axis(p, Axis::q, 0.5), ConstraintViolation);
}
