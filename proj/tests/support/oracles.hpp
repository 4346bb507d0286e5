#pragma once

// Reference computations used by the tests. Nothing here calls the solvers
// under test; they re-derive the quantities from definitions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "pacing/fppe.hpp"
#include "pacing/instance.hpp"

namespace pacing::testing {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// p* = inf{p >= 0 : sum_{v_i > p} w_i <= p} on one item with unit click-through rates.
inline double single_item_price(const std::vector<double>& v, const std::vector<double>& w) {
  auto excess = [&](double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] > p) s += w[i];
    return s - p;
  };
  double hi = 1.0;
  while (excess(hi) > 0.0) hi *= 2.0;
  double lo = 0.0;
  if (excess(lo) <= 0.0) return 0.0;
  for (int k = 0; k < 400; ++k) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

struct PropertyViolations {
  double bang_per_buck = 0.0;
  double supply = 0.0;
  double payment = 0.0;
  double budget = 0.0;
  double max() const { return std::max({bang_per_buck, supply, payment, budget}); }
};

// The four equilibrium properties checked straight from their definitions.
inline PropertyViolations fppe_properties(const Matrix& ctr, const MessageProfile& profile,
                                          const FppeOutcome& out) {
  PropertyViolations v;
  const std::size_t n = ctr.rows(), m = ctr.cols();
  for (std::size_t j = 0; j < m; ++j) {
    double sold = 0.0;
    for (std::size_t i = 0; i < n; ++i) sold += out.allocation(i, j);
    v.supply = std::max(v.supply, sold - 1.0);
    if (out.prices[j] > 0.0) v.supply = std::max(v.supply, 1.0 - sold);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double bid = profile[i].max_bid.as_double();
    const double w = profile[i].budget.as_double();
    double spend = 0.0, best_ratio = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      spend += out.allocation(i, j) * out.prices[j];
      if (ctr(i, j) > 0.0 && out.prices[j] > 0.0) {
        best_ratio = std::max(best_ratio, ctr(i, j) / out.prices[j]);
      }
    }
    v.payment = std::max(v.payment, std::abs(spend - out.payments[i]));
    if (std::isfinite(w)) v.budget = std::max(v.budget, out.payments[i] - w);
    for (std::size_t j = 0; j < m; ++j) {
      if (out.allocation(i, j) <= 1e-12 || out.prices[j] <= 0.0) continue;
      // Allocated items carry the best value per unit of money and are bid on.
      double ratio = ctr(i, j) / out.prices[j];
      v.bang_per_buck = std::max(v.bang_per_buck, out.allocation(i, j) * (best_ratio - ratio) *
                                                      out.prices[j] / std::max(ratio, 1e-300));
      if (std::isfinite(bid)) {
        v.bang_per_buck = std::max(v.bang_per_buck, out.prices[j] - bid * ctr(i, j));
      }
    }
    // Strictly paced agents spend their whole budget.
    if (std::isfinite(w) && std::isfinite(bid) && best_ratio > 0.0 && bid * best_ratio > 1.0 + 1e-9) {
      v.budget = std::max(v.budget, w - out.payments[i]);
    }
    if (std::isinf(bid) && std::isfinite(w) && best_ratio > 0.0) {
      v.budget = std::max(v.budget, w - out.payments[i]);
    }
  }
  return v;
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// inf / sup of {x on an N-point grid of [0, 1] : pred(x)}.
inline std::pair<double, double> scan_unit_interval(const std::function<bool(double)>& pred,
                                                    std::size_t points) {
  double lo = kInfinity, hi = -kInfinity;
  for (std::size_t k = 0; k <= points; ++k) {
    double x = static_cast<double>(k) / static_cast<double>(points);
    if (pred(x)) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  return {lo, hi};
}

}  // namespace pacing::testing
