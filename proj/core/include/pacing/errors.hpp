#pragma once

#include <stdexcept>
#include <string>

namespace pacing {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

// A formula is undefined at the given point (e.g. a zero price in a ratio).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Argument lies outside the range of an inverted function.
class RangeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// An enumeration or grid would exceed its configured budget.
class SizeError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace pacing
