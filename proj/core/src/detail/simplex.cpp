#include "detail/simplex.hpp"

#include <cmath>
#include <cstddef>

#include "pacing/errors.hpp"

namespace pacing::detail {

LpSolution maximize(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                    const std::vector<double>& c) {
  const std::size_t rows = a.size();
  const std::size_t cols = c.size();
  const std::size_t width = cols + rows + 1;
  constexpr double kPivotEps = 1e-12;

  // Row r < rows: constraint r; row `rows`: objective (negated costs).
  std::vector<double> t((rows + 1) * width, 0.0);
  auto at = [&](std::size_t r, std::size_t k) -> double& { return t[r * width + k]; };
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    if (a[r].size() != cols) throw InternalError("simplex row width mismatch");
    if (b[r] < 0.0) throw InternalError("simplex needs a non-negative right-hand side");
    for (std::size_t k = 0; k < cols; ++k) at(r, k) = a[r][k];
    at(r, cols + r) = 1.0;
    at(r, width - 1) = b[r];
    basis[r] = cols + r;
  }
  for (std::size_t k = 0; k < cols; ++k) at(rows, k) = -c[k];

  LpSolution sol;
  for (std::size_t iter = 0; iter < 100000; ++iter) {
    std::size_t enter = width;
    for (std::size_t k = 0; k + 1 < width; ++k) {
      if (at(rows, k) < -kPivotEps) {
        enter = k;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = rows;
    double best_ratio = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      double coef = at(r, enter);
      if (coef <= kPivotEps) continue;
      double ratio = at(r, width - 1) / coef;
      if (leave == rows || ratio < best_ratio - 1e-15 ||
          (std::abs(ratio - best_ratio) <= 1e-15 && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == rows) {
      sol.bounded = false;
      return sol;
    }
    double pivot = at(leave, enter);
    for (std::size_t k = 0; k < width; ++k) at(leave, k) /= pivot;
    for (std::size_t r = 0; r <= rows; ++r) {
      if (r == leave) continue;
      double f = at(r, enter);
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < width; ++k) at(r, k) -= f * at(leave, k);
    }
    basis[leave] = enter;
  }
  sol.x.assign(cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] < cols) sol.x[basis[r]] = std::max(0.0, at(r, width - 1));
  }
  sol.objective = 0.0;
  for (std::size_t k = 0; k < cols; ++k) sol.objective += c[k] * sol.x[k];
  return sol;
}

}  // namespace pacing::detail
