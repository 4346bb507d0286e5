#include <algorithm>
#include <cmath>

#include "pacing/metagame.hpp"
#include "pacing/welfare.hpp"

namespace pacing {

MixedProfile::MixedProfile(std::vector<MixedStrategy> strategies)
    : strategies_(std::move(strategies)) {
  if (strategies_.empty()) throw InputError("mixed profile needs at least one agent");
  for (std::size_t i = 0; i < strategies_.size(); ++i) {
    const auto& s = strategies_[i];
    if (s.support.empty() || s.support.size() != s.probabilities.size()) {
      throw InputError("agent " + std::to_string(i) +
                       ": support and probabilities must be non-empty and equal in length");
    }
    double sum = 0.0;
    for (double p : s.probabilities) {
      if (!(p >= 0.0)) throw InputError("agent " + std::to_string(i) + ": negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw InputError("agent " + std::to_string(i) + ": probabilities sum to " +
                       std::to_string(sum));
    }
  }
}

MixedProfile MixedProfile::point_mass(const MessageProfile& profile) {
  std::vector<MixedStrategy> s;
  for (const auto& m : profile.messages()) s.push_back({{m}, {1.0}});
  return MixedProfile(std::move(s));
}

std::size_t MixedProfile::support_product() const {
  std::size_t total = 1;
  for (const auto& s : strategies_) {
    if (total > SIZE_MAX / s.support.size()) return SIZE_MAX;
    total *= s.support.size();
  }
  return total;
}

MixedBoundReport mixed_deviation_bound_check(const Instance& instance, const MixedProfile& mixed,
                                             const Matrix& x_star,
                                             std::size_t max_realizations) {
  const std::size_t n = instance.num_agents(), m = instance.num_items();
  if (mixed.size() != n) throw InputError("mixed profile size does not match the instance");
  const std::size_t total = mixed.support_product();
  if (total > max_realizations) {
    throw SizeError("support product " + std::to_string(total) + " exceeds " +
                    std::to_string(max_realizations));
  }
  const WelfareResult opt = liquid_welfare(instance, x_star);

  MixedBoundReport r;
  r.realizations = total;
  r.expected_utility.assign(n, 0.0);
  r.expected_prices.assign(m, 0.0);
  r.expected_prices_without.assign(n, std::vector<double>(m, 0.0));
  std::vector<double> expected_value(n, 0.0);

  const Message absent(ExtNonNeg::infinity(), ExtNonNeg(0.0));
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t count = 0; count < total; ++count) {
    double prob = 1.0;
    std::vector<Message> msgs(n);
    for (std::size_t i = 0; i < n; ++i) {
      msgs[i] = mixed[i].support[idx[i]];
      prob *= mixed[i].probabilities[idx[i]];
    }
    if (prob > 0.0) {
      MessageProfile profile(std::move(msgs));
      FppeOutcome out = solve_fppe(instance, profile);
      for (std::size_t j = 0; j < m; ++j) r.expected_prices[j] += prob * out.prices[j];
      for (std::size_t i = 0; i < n; ++i) {
        const auto& a = instance.agent(i);
        r.expected_utility[i] +=
            prob * utility(a, out.allocation.row(i), instance.ctr().row(i), out.payments[i]);
        expected_value[i] += prob * a.valuation(clicks(out.allocation.row(i), instance.ctr().row(i)));
        FppeOutcome without = solve_fppe(instance, profile.with(i, absent));
        for (std::size_t j = 0; j < m; ++j)
          r.expected_prices_without[i][j] += prob * without.prices[j];
      }
    }
    std::size_t i = 0;
    while (i < n && ++idx[i] == mixed[i].support.size()) idx[i++] = 0;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = instance.agent(i);
    // C^{-1} extended oddly so a negative expected utility still enters the bound.
    double u = r.expected_utility[i];
    double inv = u >= 0.0 ? a.money_cost.inverse_or_inf(u) : -a.money_cost.inverse_or_inf(-u);
    double spend = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      spend += x_star(i, j) * r.expected_prices[j];
      r.max_dominance_violation = std::max(
          r.max_dominance_violation, r.expected_prices_without[i][j] - r.expected_prices[j]);
    }
    r.agent_slack.push_back(inv + spend - 0.5 * opt.per_agent_wtp[i]);
    r.eq_wtp.push_back(
        std::min(a.budget.as_double(), a.money_cost.inverse_or_inf(expected_value[i])));
    r.eq_welfare += r.eq_wtp.back();
  }
  r.opt_welfare = opt.total;
  r.aggregate_slack = 4.0 * r.eq_welfare - r.opt_welfare;
  r.ratio = r.eq_welfare > 0.0 ? r.opt_welfare / r.eq_welfare : (r.opt_welfare > 0.0 ? kInf : 1.0);
  return r;
}

}  // namespace pacing
