#include <algorithm>
#include <cmath>
#include <mutex>

#include "pacing/metagame.hpp"
#include "pacing/parallel.hpp"

namespace pacing {

StrategyGrid product_grid(const std::vector<ExtNonNeg>& max_bids,
                          const std::vector<ExtNonNeg>& budgets, std::size_t num_agents) {
  std::vector<Message> per_agent;
  for (const auto& v : max_bids)
    for (const auto& w : budgets)
      if (!(v.is_infinite() && w.is_infinite())) per_agent.emplace_back(v, w);
  if (per_agent.empty()) throw InputError("strategy grid is empty");
  return StrategyGrid(num_agents, per_agent);
}

GridSearchResult grid_epsilon_pne_search(const Instance& instance, const StrategyGrid& grid,
                                         double eps, const GridSearchOptions& options) {
  const std::size_t n = instance.num_agents();
  if (grid.size() != n) throw InputError("strategy grid needs one message set per agent");
  std::size_t total = 1;
  for (const auto& g : grid) {
    if (g.empty()) throw InputError("empty strategy set");
    if (total > options.max_profiles / g.size()) {
      throw SizeError("grid has more than " + std::to_string(options.max_profiles) + " profiles");
    }
    total *= g.size();
  }

  // Mixed-radix index: agent 0 varies fastest.
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t i = 1; i < n; ++i) stride[i] = stride[i - 1] * grid[i - 1].size();
  auto decode = [&](std::size_t idx) {
    std::vector<std::size_t> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = idx / stride[i] % grid[i].size();
    return s;
  };

  std::vector<double> u(total * n);
  const bool single = instance.num_items() == 1;
  const auto column = single ? instance.ctr().column(0) : std::vector<double>{};
  parallel_for(total, options.jobs, [&](std::size_t idx) {
    auto s = decode(idx);
    std::vector<Message> msgs(n);
    for (std::size_t i = 0; i < n; ++i) msgs[i] = grid[i][s[i]];
    MessageProfile profile(std::move(msgs));
    FppeOutcome out = single ? solve_fppe_single_item(profile, column)
                             : solve_fppe(instance, profile, options.fppe);
    for (std::size_t i = 0; i < n; ++i) {
      u[idx * n + i] = utility(instance.agent(i), out.allocation.row(i), instance.ctr().row(i),
                               out.payments[i]);
    }
  });

  std::vector<double> max_gain(total, 0.0);
  parallel_for(total, options.jobs, [&](std::size_t idx) {
    auto s = decode(idx);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double cur = u[idx * n + i];
      const std::size_t base = idx - s[i] * stride[i];
      double best = cur;
      for (std::size_t k = 0; k < grid[i].size(); ++k) best = std::max(best, u[(base + k * stride[i]) * n + i]);
      double g = best == cur ? 0.0 : best - cur;
      worst = std::max(worst, g);
    }
    max_gain[idx] = worst;
  });

  GridSearchResult r;
  r.profiles = total;
  r.min_max_gain = kInf;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (max_gain[idx] < r.min_max_gain) {
      r.min_max_gain = max_gain[idx];
      r.argmin_profile = decode(idx);
    }
    if (max_gain[idx] <= eps) r.eps_pne.push_back(decode(idx));
  }
  return r;
}

}  // namespace pacing
