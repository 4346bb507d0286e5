#pragma once

#include <vector>

namespace pacing::detail {

struct LpSolution {
  std::vector<double> x;
  double objective = 0.0;
  bool bounded = true;
};

// max c.x subject to A x <= b, x >= 0, with b >= 0 so the slack basis is feasible.
// Dense tableau with Bland's rule; intended for a few dozen columns.
LpSolution maximize(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                    const std::vector<double>& c);

}  // namespace pacing::detail
