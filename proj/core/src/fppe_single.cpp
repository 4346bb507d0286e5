#include <algorithm>
#include <cmath>
#include <numeric>

#include "detail/fppe_internal.hpp"

namespace pacing {

FppeOutcome solve_fppe_single_item(const MessageProfile& profile,
                                   const std::vector<double>& ctr_column) {
  const std::size_t n = profile.size();
  if (n == 0) throw InputError("empty profile");
  if (!ctr_column.empty() && ctr_column.size() != n) {
    throw InputError("ctr column length does not match the profile");
  }
  Matrix ctr(n, 1, 1.0);
  for (std::size_t i = 0; i < ctr_column.size(); ++i) ctr(i, 0) = ctr_column[i];
  detail::Bidders b(ctr, profile);

  // Effective per-item value; infinite max bids stay infinite.
  std::vector<double> e(n, 0.0);
  std::vector<double> finite_values;
  for (std::size_t i = 0; i < n; ++i) {
    if (!b.active[i]) continue;
    e[i] = b.v[i] * ctr(i, 0);
    if (std::isfinite(e[i])) finite_values.push_back(e[i]);
  }
  std::sort(finite_values.begin(), finite_values.end());
  finite_values.erase(std::unique(finite_values.begin(), finite_values.end()),
                      finite_values.end());

  // Budget of active agents strictly above p (infinite if any unlimited budget is).
  auto demand_above = [&](double p, bool all) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (b.active[i] && (all || e[i] > p)) s += b.w[i];
    }
    return s;
  };

  // p* = inf{p : sum_{e_i > p} w_i <= p}, scanning [0,u_1), [u_1,u_2), ..., [u_K, inf).
  double price = 0.0;
  bool found = false;
  for (std::size_t k = 0; k <= finite_values.size() && !found; ++k) {
    double lower = k == 0 ? 0.0 : finite_values[k - 1];
    double upper = k < finite_values.size() ? finite_values[k] : kInf;
    double s = demand_above(lower, k == 0);
    double c = std::max(lower, s);
    if (c < upper) {
      price = c;
      found = true;
    }
  }
  if (!found) throw InternalError("single-item price scan found no feasible price");

  Matrix x(n, 1, 0.0);
  if (price > 0.0) {
    double residual = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (b.active[i] && e[i] > price) {
        x(i, 0) = b.w[i] / price;
        residual -= x(i, 0);
      }
    }
    residual = std::max(0.0, residual);
    for (std::size_t i = 0; i < n && residual > 0.0; ++i) {
      if (b.active[i] && e[i] == price) {
        x(i, 0) = std::min(residual, b.w[i] / price);
        residual -= x(i, 0);
      }
    }
  }
  return detail::finalize_outcome(ctr, profile, {price}, std::move(x), FppeMethod::ClosedForm, 0);
}

}  // namespace pacing
