#include "pacing/random_instances.hpp"

#include <algorithm>

namespace pacing {
namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return uniform(rng, 0.0, 1.0) < p; }

std::vector<Breakpoint> random_pwl(std::mt19937_64& rng, std::size_t segments, double lo,
                                   double hi, bool increasing_slopes) {
  std::vector<double> slopes(segments);
  for (auto& s : slopes) s = uniform(rng, lo, hi);
  if (increasing_slopes) {
    std::sort(slopes.begin(), slopes.end());
  } else {
    std::sort(slopes.rbegin(), slopes.rend());
  }
  std::vector<Breakpoint> pts{{0.0, 0.0}};
  for (double s : slopes) {
    double dx = uniform(rng, 0.1, 0.6);
    pts.push_back({pts.back().x + dx, pts.back().y + s * dx});
  }
  return pts;
}

}  // namespace

AgentType random_agent(std::mt19937_64& rng, PreferenceFamily family,
                       double infinite_budget_probability) {
  if (family == PreferenceFamily::Mixed) {
    std::uniform_int_distribution<int> pick(0, 2);
    family = static_cast<PreferenceFamily>(pick(rng));
  }
  ExtNonNeg budget = coin(rng, infinite_budget_probability) ? ExtNonNeg::infinity()
                                                            : ExtNonNeg(uniform(rng, 0.05, 1.5));
  switch (family) {
    case PreferenceFamily::Power: {
      auto v = Valuation::power(uniform(rng, 0.5, 2.0), uniform(rng, 0.3, 1.0));
      auto c = coin(rng, 0.5) ? MoneyCost::identity()
                              : MoneyCost::power(uniform(rng, 0.5, 2.0), uniform(rng, 1.0, 2.0));
      return AgentType(v, c, budget);
    }
    case PreferenceFamily::PiecewiseLinear: {
      std::uniform_int_distribution<std::size_t> segs(2, 4);
      auto v = Valuation::piecewise_linear(random_pwl(rng, segs(rng), 0.1, 3.0, false));
      auto c = MoneyCost::piecewise_linear(random_pwl(rng, segs(rng) - 1, 0.5, 2.0, true));
      return AgentType(v, c, budget);
    }
    default:
      return budgeted_agent(uniform(rng, 0.2, 2.0), budget);
  }
}

Instance random_instance(std::mt19937_64& rng, const RandomInstanceSpec& shape) {
  std::uniform_int_distribution<std::size_t> nd(shape.min_agents, shape.max_agents);
  std::uniform_int_distribution<std::size_t> md(shape.min_items, shape.max_items);
  std::size_t n = nd(rng);
  std::size_t m = md(rng);
  std::vector<AgentType> agents;
  for (std::size_t i = 0; i < n; ++i) {
    agents.push_back(random_agent(rng, shape.family, shape.infinite_budget_probability));
  }
  Matrix ctr(n, m, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      ctr(i, j) = m == 1 || !coin(rng, shape.zero_ctr_probability) ? uniform(rng, 0.2, 1.0) : 0.0;
  std::uniform_int_distribution<std::size_t> pick_i(0, n - 1), pick_j(0, m - 1);
  for (std::size_t j = 0; j < m; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) any = any || ctr(i, j) > 0.0;
    if (!any) ctr(pick_i(rng), j) = uniform(rng, 0.2, 1.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < m; ++j) any = any || ctr(i, j) > 0.0;
    if (!any) ctr(i, pick_j(rng)) = uniform(rng, 0.2, 1.0);
  }
  return Instance(std::move(agents), std::move(ctr));
}

Message random_message(std::mt19937_64& rng, double infinite_probability) {
  bool inf_bid = coin(rng, infinite_probability);
  bool inf_budget = !inf_bid && coin(rng, infinite_probability);
  ExtNonNeg bid = inf_bid ? ExtNonNeg::infinity()
                          : ExtNonNeg(coin(rng, 0.05) ? 0.0 : uniform(rng, 0.05, 2.0));
  ExtNonNeg budget = inf_budget ? ExtNonNeg::infinity()
                                : ExtNonNeg(coin(rng, 0.05) ? 0.0 : uniform(rng, 0.02, 1.5));
  return Message(bid, budget);
}

MessageProfile random_profile(std::mt19937_64& rng, std::size_t n, double infinite_probability) {
  std::vector<Message> ms;
  for (std::size_t i = 0; i < n; ++i) ms.push_back(random_message(rng, infinite_probability));
  return MessageProfile(std::move(ms));
}

}  // namespace pacing
