#pragma once

#include <stdexcept>
#include <string>

namespace adsgame {

// Base class for all library errors. Every throw site uses one of the
// concrete subclasses below so callers (and the C API) can map errors
// to stable codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric input was NaN or infinite.
class NonFinite : public Error {
 public:
  using Error::Error;
};

// A parameter or price violated one of its bounds; the message names the
// violated bound.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

// A price vector was tagged with a different strategy than the operation
// it was passed to.
class StrategyMismatch : public Error {
 public:
  using Error::Error;
};

// Full-market demand formulas were asked to evaluate a vehicle or bundle
// price above the full-market cap; use the restricted-market path instead.
class RestrictedPricing : public Error {
 public:
  using Error::Error;
};

// Equilibrium case conditions are numerically degenerate at these
// parameters (a case-threshold formula has no finite value).
class Degenerate : public Error {
 public:
  using Error::Error;
};

// Bisection bracket endpoints do not straddle a sign change.
class NoSignChange : public Error {
 public:
  using Error::Error;
};

// A grid search would exceed the configured cell budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// File output failed; the message carries the path.
class IoFailure : public Error {
 public:
  using Error::Error;
};

// A run configuration document could not be parsed or was inconsistent.
class ConfigParse : public Error {
 public:
  using Error::Error;
};

}  // namespace adsgame
