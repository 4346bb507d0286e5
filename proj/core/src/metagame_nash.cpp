#include <algorithm>
#include <cmath>
#include <functional>

#include "detail/metagame_internal.hpp"

namespace pacing {
namespace {

void check_profile(const Instance& instance, const MessageProfile& profile) {
  if (profile.size() != instance.num_agents()) {
    throw InputError("profile has " + std::to_string(profile.size()) + " messages for " +
                     std::to_string(instance.num_agents()) + " agents");
  }
}

double deviation_utility(const Instance& inst, const MessageProfile& profile, std::size_t i,
                         const Message& m, const FppeOptions& opts) {
  return utility_of_profile(inst, profile.with(i, m), i, opts);
}

double reference_value(const AgentType& a, const Matrix& ctr, std::size_t i) {
  if (a.valuation.kind() == Valuation::Kind::Linear) return a.valuation.linear_value();
  double q = 0.0;
  for (std::size_t j = 0; j < ctr.cols(); ++j) q = std::max(q, ctr(i, j));
  q = std::max(q, 1e-12);
  return a.valuation(q) / q;
}

struct Sweep {
  double utility = -kInf;
  Message message;
};

// Best deviation for agent i over the grid sweep of its message space.
Sweep grid_deviation(const Instance& inst, const MessageProfile& profile, std::size_t i,
                     MessageSpace space, const std::vector<double>& grid, double upper,
                     const FppeOptions& opts) {
  const AgentType& a = inst.agent(i);
  Sweep best;
  auto consider = [&](const Message& m) {
    double u = deviation_utility(inst, profile, i, m, opts);
    if (u > best.utility) best = {u, m};
  };
  const double w = a.budget.as_double();
  switch (space) {
    case MessageSpace::Full:
    case MessageSpace::BudgetOnly:
      for (double b : grid)
        if (b <= w) consider(Message(ExtNonNeg::infinity(), ExtNonNeg(b)));
      if (std::isfinite(w) && w < upper) consider(Message(ExtNonNeg::infinity(), ExtNonNeg(w)));
      break;
    case MessageSpace::BudgetOnlyKnownValue: {
      if (a.valuation.kind() != Valuation::Kind::Linear) {
        throw UnsupportedError("budget-only-known-value space requires a linear valuation");
      }
      ExtNonNeg v(a.valuation.linear_value());
      for (double b : grid)
        if (b <= w) consider(Message(v, ExtNonNeg(b)));
      consider(Message(v, a.budget));
      break;
    }
    case MessageSpace::ValueOnly: {
      std::vector<double> values{0.0};
      const Matrix& ctr = inst.ctr();
      for (std::size_t k = 0; k < profile.size(); ++k) {
        if (k == i || profile[k].max_bid.is_infinite()) continue;
        for (std::size_t j = 0; j < ctr.cols(); ++j) {
          if (ctr(i, j) <= 0.0) continue;
          double t = profile[k].max_bid.finite() * ctr(k, j) / ctr(i, j);
          for (double d : {0.0, 1e-9, -1e-9}) values.push_back(t * (1.0 + d));
        }
      }
      const double ref = reference_value(a, ctr, i);
      for (double c : {0.25, 0.5, 1.0, 2.0, 4.0}) values.push_back(c * ref);
      double top = 4.0 * ref;
      for (double t : values) top = std::max(top, 2.0 * t);
      for (double t : detail::sweep_grid(top, grid.size())) values.push_back(t);
      for (double t : values)
        if (t >= 0.0) consider(Message(ExtNonNeg(t), ExtNonNeg::infinity()));
      break;
    }
  }
  return best;
}

void finish(EquilibriumReport& r) {
  r.gain = -kInf;
  for (std::size_t i = 0; i < r.agent_gains.size(); ++i) {
    if (r.agent_gains[i] > r.gain) {
      r.gain = r.agent_gains[i];
      r.worst_agent = i;
    }
  }
  r.is_eps_nash = r.gain <= r.eps;
}

double gain_of(double best, double current) {
  if (best == current) return 0.0;  // covers both -inf
  return best - current;
}

}  // namespace

std::string to_string(MessageSpace s) {
  switch (s) {
    case MessageSpace::Full: return "full";
    case MessageSpace::BudgetOnly: return "budget-only";
    case MessageSpace::BudgetOnlyKnownValue: return "budget-only-known-value";
    case MessageSpace::ValueOnly: return "value-only";
  }
  return "unknown";
}

MessageSpace message_space_from_string(const std::string& s) {
  for (auto m : {MessageSpace::Full, MessageSpace::BudgetOnly, MessageSpace::BudgetOnlyKnownValue,
                 MessageSpace::ValueOnly}) {
    if (to_string(m) == s) return m;
  }
  throw InputError("unknown message space '" + s +
                   "' (expected full, budget-only, budget-only-known-value, value-only)");
}

std::string to_string(NashMethod m) {
  return m == NashMethod::ExactSingleItem ? "exact_single_item" : "grid_sweep";
}

std::string to_string(EquilibriumKind k) { return k == EquilibriumKind::Low ? "low" : "high"; }

double utility_of_profile(const Instance& instance, const MessageProfile& profile,
                          std::size_t agent, const FppeOptions& options) {
  check_profile(instance, profile);
  if (agent >= instance.num_agents()) throw InputError("agent index out of range");
  FppeOutcome out = instance.num_items() == 1
                        ? solve_fppe_single_item(profile, instance.ctr().column(0))
                        : solve_fppe(instance, profile, options);
  return utility(instance.agent(agent), out.allocation.row(agent), instance.ctr().row(agent),
                 out.payments[agent]);
}

EquilibriumReport verify_pure_nash(const Instance& instance, const MessageProfile& profile,
                                   double eps, MessageSpace space, const NashOptions& options) {
  check_profile(instance, profile);
  if (!(eps >= 0.0)) throw InputError("eps must be non-negative");
  const std::size_t n = instance.num_agents();
  EquilibriumReport r;
  r.eps = eps;

  FppeOutcome base = instance.num_items() == 1
                         ? solve_fppe_single_item(profile, instance.ctr().column(0))
                         : solve_fppe(instance, profile, options.fppe);
  for (std::size_t i = 0; i < n; ++i) {
    r.agent_utilities.push_back(utility(instance.agent(i), base.allocation.row(i),
                                        instance.ctr().row(i), base.payments[i]));
  }

  std::vector<Message> deviations(n);
  if (instance.num_items() == 1) {
    r.method = NashMethod::ExactSingleItem;
    for (std::size_t i = 0; i < n; ++i) {
      BestResponse br = best_response_single_item(instance, profile, i, space);
      r.agent_gains.push_back(gain_of(br.utility, r.agent_utilities[i]));
      deviations[i] = br.message;
    }
  } else {
    r.method = NashMethod::GridSweep;
    double upper = 0.0, top_bid = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (profile[k].budget.is_finite()) upper += profile[k].budget.finite();
      if (profile[k].max_bid.is_finite()) top_bid = std::max(top_bid, profile[k].max_bid.finite());
    }
    double ctr_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double row = 0.0;
      for (std::size_t j = 0; j < instance.num_items(); ++j) row += instance.ctr()(k, j);
      ctr_sum = std::max(ctr_sum, row);
    }
    upper += top_bid * ctr_sum;
    if (upper <= 0.0) upper = 1.0;
    const auto grid = detail::sweep_grid(upper, options.grid_points);
    r.grid_points = grid.size();
    r.grid_upper = upper;
    for (std::size_t i = 0; i < n; ++i) {
      Sweep s = grid_deviation(instance, profile, i, space, grid, upper, options.fppe);
      r.agent_gains.push_back(gain_of(s.utility, r.agent_utilities[i]));
      deviations[i] = s.message;
    }
  }
  finish(r);
  r.worst_deviation = deviations[r.worst_agent];
  return r;
}

SingleItemNashResult solve_pure_nash_single_item(const Instance& instance, double eps) {
  if (instance.num_items() != 1) throw UnsupportedError("single-item solver needs m = 1");
  const std::size_t n = instance.num_agents();
  SingleItemNashResult res;
  res.intervals = price_intervals(instance);
  res.lowest_price = res.intervals.low.lo;
  res.highest_price = res.intervals.high.hi;

  auto add = [&](double p, MessageProfile profile, EquilibriumKind kind) {
    EquilibriumReport rep = verify_pure_nash(instance, profile, eps);
    if (!rep.is_eps_nash) return;
    for (const auto& e : res.equilibria)
      if (e.kind == kind && std::abs(e.price - p) <= 1e-9 * std::max(1.0, p)) return;
    res.equilibria.push_back({p, std::move(profile), kind, std::move(rep)});
  };
  // A zero endpoint is only approached; use a price small enough that the
  // lost surplus stays inside eps.
  auto usable = [&](double p) { return p > 0.0 ? p : 0.1 * eps; };

  const auto& low = res.intervals.low;
  if (!low.empty) {
    for (double p : {low.lo, low.hi}) {
      double q = usable(p);
      double y = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        y += alloc_bounds(instance.agent(i), q, instance.ctr()(i, 0)).first;
      if (std::abs(y - 1.0) > 1e-7) continue;
      add(q, construct_low_price_eq(instance, q), EquilibriumKind::Low);
    }
  }

  const auto& high = res.intervals.high;
  if (!high.empty) {
    std::vector<double> samples;
    for (int k = 0; k <= 10; ++k) samples.push_back(high.lo + (high.hi - high.lo) * k / 10.0);
    // Prices where the others' upper bounds exactly absorb 1 - y_{i*}.
    for (std::size_t star = 0; star < n; ++star) {
      auto g = [&](double p) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          auto [y, z] = alloc_bounds(instance.agent(k), p, instance.ctr()(k, 0));
          s += k == star ? y : z;
        }
        return s - 1.0;
      };
      double lo = usable(high.lo), hi = high.hi;
      if (!(hi > lo) || g(lo) < 0.0 || g(hi) > 0.0) continue;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (g(mid) >= 0.0 ? lo : hi) = mid;
      }
      samples.push_back(lo);
      samples.push_back(hi);
    }
    for (double p : samples) {
      double q = usable(p);
      std::optional<MessageProfile> prof;
      try {
        prof = construct_high_price_eq(instance, q);
      } catch (const InputError&) {
        continue;
      }
      if (prof) add(q, std::move(*prof), EquilibriumKind::High);
    }
  }
  std::sort(res.equilibria.begin(), res.equilibria.end(),
            [](const auto& a, const auto& b) { return a.price < b.price; });
  return res;
}

}  // namespace pacing
