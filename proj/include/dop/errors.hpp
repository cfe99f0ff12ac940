#pragma once

#include <stdexcept>
#include <string>

namespace dop {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid parameter values (non-positive parameter, bad shift index, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Weight whose moment series cannot converge (M > N+1, or M = N+1 with eta >= 1).
class DivergentWeight : public Error {
public:
  using Error::Error;
};

/// Series did not satisfy the tail stopping rule within k_max terms.
class SlowConvergence : public Error {
public:
  using Error::Error;
};

/// Elimination pivot vanished (or lost all significance) at working precision.
class NumericBreakdown : public Error {
public:
  using Error::Error;
};

/// Second kind function requested on (or too close to) a lattice point.
class PoleError : public Error {
public:
  using Error::Error;
};

/// A theorem hypothesis failed (vanishing denominator, coincident roots, n out of range).
class HypothesisViolated : public Error {
public:
  using Error::Error;
};

/// Pointwise transform evaluation requested at the divisor's zero.
class PointOnDivisor : public Error {
public:
  using Error::Error;
};

/// An H (or shifted-H) entry required as a denominator vanished.
class ZeroDenominator : public Error {
public:
  using Error::Error;
};

/// Requested operation needs a larger truncation window.
class WindowTooSmall : public Error {
public:
  using Error::Error;
};

/// Leading block of a quasi-determinant input is singular at working precision.
class SingularBlock : public Error {
public:
  using Error::Error;
};

/// Malformed run configuration (CLI layer).
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace dop
