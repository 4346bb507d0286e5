#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "pacing/errors.hpp"

namespace pacing {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// A non-negative real or +inf. Infinity is a flag, never a stored sentinel.
class ExtNonNeg {
 public:
  constexpr ExtNonNeg() = default;
  ExtNonNeg(double v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v) || v < 0.0) {
      throw InputError("ExtNonNeg requires a non-negative value, got " + std::to_string(v));
    }
    if (std::isinf(v)) {
      infinite_ = true;
    } else {
      value_ = v;
    }
  }

  static ExtNonNeg infinity() {
    ExtNonNeg x;
    x.infinite_ = true;
    return x;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  // Finite part; throws when infinite.
  double finite() const {
    if (infinite_) throw DomainError("finite() called on +inf");
    return value_;
  }

  // Widening conversion to double (+inf for the infinite value).
  double as_double() const noexcept { return infinite_ ? kInf : value_; }

  friend bool operator==(const ExtNonNeg& a, const ExtNonNeg& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator<(const ExtNonNeg& a, const ExtNonNeg& b) noexcept {
    if (a.infinite_) return false;
    return b.infinite_ || a.value_ < b.value_;
  }
  friend ExtNonNeg operator+(const ExtNonNeg& a, const ExtNonNeg& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtNonNeg(a.value_ + b.value_);
  }
  friend ExtNonNeg min(const ExtNonNeg& a, const ExtNonNeg& b) { return a < b ? a : b; }
  friend ExtNonNeg max(const ExtNonNeg& a, const ExtNonNeg& b) { return a < b ? b : a; }

  // Compare against a finite amount, e.g. a payment against a budget.
  bool exceeded_by(double t) const noexcept { return !infinite_ && t > value_; }

  std::string to_string() const;

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

}  // namespace pacing
