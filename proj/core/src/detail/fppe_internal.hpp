#pragma once

#include <cstddef>
#include <vector>

#include "pacing/fppe.hpp"

namespace pacing::detail {

// Reports flattened to doubles (+inf for infinite coordinates).
struct Bidders {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> v;
  std::vector<double> w;
  std::vector<char> active;  // can and wants to spend on some item

  Bidders(const Matrix& ctr, const MessageProfile& profile);
};

// Payments, multipliers, bids and residuals from prices and allocation.
FppeOutcome finalize_outcome(const Matrix& ctr, const MessageProfile& profile,
                             std::vector<double> prices, Matrix allocation, FppeMethod method,
                             std::size_t iterations);

// b_i = min{v_i, min_j p_j / phi_ij}; +inf when no item has positive ctr and v is infinite.
std::vector<double> bids_from_prices(const Matrix& ctr, const Bidders& bidders,
                                     const std::vector<double>& prices);

}  // namespace pacing::detail
