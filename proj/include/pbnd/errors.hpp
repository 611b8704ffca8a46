#pragma once

#include <stdexcept>
#include <string>

namespace pbnd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Document does not match the expected JSON layout.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a model invariant (s == t, B <= 0, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// s and t are separated in the network under consideration.
class Disconnected : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, long long cap, double tol)
      : Error(what), cap_(cap), tol_(tol) {}
  long long cap() const { return cap_; }
  double tol() const { return tol_; }

 private:
  long long cap_;
  double tol_;
};

/// No solution satisfies the resistance budget.
class Infeasible : public Error {
 public:
  using Error::Error;
};

class NotSeriesParallel : public Error {
 public:
  using Error::Error;
};

/// Raised by exponential-time oracles when the input exceeds their guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class OddSum : public Error {
 public:
  using Error::Error;
};

class AllVariableCostsZero : public Error {
 public:
  using Error::Error;
};

/// Input lies outside the regimes covered by an algorithm.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace pbnd
