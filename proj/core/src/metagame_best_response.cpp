#include <algorithm>
#include <cmath>
#include <functional>

#include "detail/metagame_internal.hpp"

namespace pacing {
namespace {

struct Opponent {
  double e = 0.0;  // reported value per unit of the item
  double w = 0.0;
};

std::vector<Opponent> active_opponents(const Instance& inst, const MessageProfile& profile,
                                       std::size_t agent) {
  std::vector<Opponent> out;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    if (k == agent) continue;
    double phi = inst.ctr()(k, 0);
    double v = profile[k].max_bid.as_double(), w = profile[k].budget.as_double();
    if (phi <= 0.0 || v <= 0.0 || w <= 0.0) continue;
    out.push_back({v * phi, w});
  }
  return out;
}

// Budgets at which the price regime changes when the agent bids (inf, b):
// p(b) rises with slope one between them and sits flat at an opponent's value
// on [u - W(>= u), u - W(> u)].
std::vector<double> regime_breakpoints(const std::vector<Opponent>& opp, double b_max) {
  std::vector<double> values;
  for (const auto& o : opp)
    if (std::isfinite(o.e)) values.push_back(o.e);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<double> pts{0.0, b_max};
  for (double u : values) {
    double above = 0.0, incl = 0.0;
    for (const auto& o : opp) {
      if (o.e > u) above += o.w;
      if (o.e >= u) incl += o.w;
    }
    for (double bp : {u - incl, u - above})
      if (bp > 0.0 && bp < b_max) pts.push_back(bp);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Maximizer of a concave function on [lo, hi], endpoints included.
std::pair<double, double> golden_max(const std::function<double(double)>& f, double lo, double hi,
                                     double tol) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    }
  }
  std::pair<double, double> best{lo, f(lo)};
  for (double x : {hi, c, d, 0.5 * (a + b)}) {
    double v = f(x);
    if (v > best.second) best = {x, v};
  }
  return best;
}

double reference_value(const AgentType& a, double phi) {
  if (a.valuation.kind() == Valuation::Kind::Linear) return a.valuation.linear_value();
  double q = std::max(phi, 1e-12);
  return a.valuation(q) / q;
}

BestResponse exact_budget_response(const Instance& inst, const MessageProfile& profile,
                                   std::size_t agent) {
  const AgentType& a = inst.agent(agent);
  const double phi = inst.ctr()(agent, 0);
  const auto opp = active_opponents(inst, profile, agent);
  auto f = [&](double b) {
    return detail::single_item_deviation_utility(inst, profile, agent,
                                                 Message(ExtNonNeg::infinity(), ExtNonNeg(b)));
  };

  BestResponse br;
  br.exact = true;
  br.message = Message(ExtNonNeg::infinity(), ExtNonNeg(0.0));
  br.utility = f(0.0);
  br.pieces = 1;
  // Past C^{-1}(V(phi)) the cost exceeds any attainable value.
  double b_max = std::min(a.budget.as_double(), a.money_cost.inverse_or_inf(a.valuation(phi)));
  if (!(b_max > 0.0) || phi <= 0.0) return br;
  if (!std::isfinite(b_max)) throw InternalError("unbounded budget range in best response");

  // Without competing demand the price is b itself: x = 1 for every b > 0, and
  // the supremum V(phi) is reached only where the money cost is still zero.
  bool uncontested = true;
  for (const auto& o : opp) uncontested = uncontested && !(o.e > 0.0 && o.w > 0.0);
  if (uncontested) {
    const double sup = a.valuation(phi);
    if (!(sup > br.utility)) return br;
    for (double b = b_max; b > 0.0 && b >= 1e-300; b *= 0.5) {
      if (a.money_cost(b) == 0.0) {
        br.utility = f(b);
        br.message = Message(ExtNonNeg::infinity(), ExtNonNeg(b));
        return br;
      }
      if (f(b) >= sup - 1e-9 * std::max(1.0, std::abs(sup))) {
        br.witness_budget = b;
        break;
      }
    }
    br.attained = false;
    br.utility = sup;
    br.message = Message(ExtNonNeg::infinity(), ExtNonNeg(br.witness_budget));
    return br;
  }

  const auto pts = regime_breakpoints(opp, b_max);
  br.pieces = pts.size() - 1;
  const double tol = 1e-12 * std::max(1.0, b_max);
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    auto [b, v] = golden_max(f, pts[k], pts[k + 1], tol);
    if (v > br.utility) {
      br.utility = v;
      br.message = Message(ExtNonNeg::infinity(), ExtNonNeg(b));
    }
  }
  return br;
}

// Refine a sweep maximum by golden section between its grid neighbours.
template <typename MakeMessage>
BestResponse sweep_response(const Instance& inst, const MessageProfile& profile,
                            std::size_t agent, std::vector<double> candidates, MakeMessage make) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  auto f = [&](double t) {
    return detail::single_item_deviation_utility(inst, profile, agent, make(t));
  };
  BestResponse br;
  br.exact = false;
  br.pieces = candidates.size();
  br.utility = -kInf;
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    double v = f(candidates[k]);
    if (v > br.utility) {
      br.utility = v;
      best_k = k;
    }
  }
  br.message = make(candidates[best_k]);
  if (std::isfinite(candidates[best_k])) {
    double lo = best_k > 0 ? candidates[best_k - 1] : candidates[best_k];
    double hi = best_k + 1 < candidates.size() && std::isfinite(candidates[best_k + 1])
                    ? candidates[best_k + 1]
                    : candidates[best_k];
    if (hi > lo) {
      auto [t, v] = golden_max(f, lo, hi, 1e-12 * std::max(1.0, hi));
      if (v > br.utility) {
        br.utility = v;
        br.message = make(t);
      }
    }
  }
  return br;
}

BestResponse known_value_response(const Instance& inst, const MessageProfile& profile,
                                  std::size_t agent) {
  const AgentType& a = inst.agent(agent);
  if (a.valuation.kind() != Valuation::Kind::Linear) {
    throw UnsupportedError("budget-only-known-value space requires a linear valuation");
  }
  const double v = a.valuation.linear_value();
  const double phi = inst.ctr()(agent, 0);
  const auto opp = active_opponents(inst, profile, agent);
  double upper = v * phi;
  for (const auto& o : opp) {
    if (std::isfinite(o.w)) upper += o.w;
    if (std::isfinite(o.e)) upper = std::max(upper, o.e + v * phi);
  }
  upper = std::min(upper, a.budget.as_double());
  auto cands = detail::sweep_grid(upper, 2000);
  for (double bp : regime_breakpoints(opp, upper)) cands.push_back(bp);
  if (a.budget.is_infinite()) cands.push_back(kInf);
  return sweep_response(inst, profile, agent, std::move(cands), [v](double b) {
    return Message(ExtNonNeg(v), std::isinf(b) ? ExtNonNeg::infinity() : ExtNonNeg(b));
  });
}

BestResponse value_only_response(const Instance& inst, const MessageProfile& profile,
                                 std::size_t agent) {
  const AgentType& a = inst.agent(agent);
  const double phi = inst.ctr()(agent, 0);
  BestResponse zero;
  zero.exact = false;
  zero.message = Message(ExtNonNeg(0.0), ExtNonNeg::infinity());
  zero.utility = detail::single_item_deviation_utility(inst, profile, agent, zero.message);
  if (phi <= 0.0) return zero;

  const double ref = reference_value(a, phi);
  std::vector<double> cands{0.0};
  std::vector<double> thresholds;
  for (const auto& o : active_opponents(inst, profile, agent))
    if (std::isfinite(o.e)) thresholds.push_back(o.e / phi);
  for (double c : {0.25, 0.5, 1.0, 2.0, 4.0}) cands.push_back(c * ref);
  double top = 4.0 * ref;
  for (double t : thresholds) top = std::max(top, 2.0 * t);
  for (double t : detail::sweep_grid(top, 2000)) cands.push_back(t);
  for (double t : thresholds) {
    cands.push_back(t);
    for (double d : {1e-6, 1e-9, 1e-12}) {
      cands.push_back(t * (1.0 + d));
      cands.push_back(t * (1.0 - d));
    }
  }
  auto make = [](double v) { return Message(ExtNonNeg(v), ExtNonNeg::infinity()); };
  BestResponse br = sweep_response(inst, profile, agent, cands, make);

  // A maximum just above an opponent's value that the tie itself misses is a supremum.
  for (double t : thresholds) {
    double at = detail::single_item_deviation_utility(inst, profile, agent, make(t));
    double above = detail::single_item_deviation_utility(inst, profile, agent, make(t * (1.0 + 1e-12)));
    if (std::abs(br.utility - above) <= 1e-9 * std::max(1.0, std::abs(above)) &&
        above > at + 1e-9 * std::max(1.0, std::abs(above))) {
      br.attained = false;
      br.message = make(t * (1.0 + 1e-12));
    }
  }
  return br;
}

}  // namespace

namespace detail {

double single_item_deviation_utility(const Instance& instance, const MessageProfile& profile,
                                     std::size_t agent, const Message& m) {
  auto out = solve_fppe_single_item(profile.with(agent, m), instance.ctr().column(0));
  return utility(instance.agent(agent), out.allocation.row(agent), instance.ctr().row(agent),
                 out.payments[agent]);
}

std::vector<double> sweep_grid(double upper, std::size_t points) {
  std::vector<double> g{0.0};
  if (!(upper > 0.0) || !std::isfinite(upper) || points < 2) return g;
  const std::size_t half = points / 2;
  for (std::size_t k = 1; k <= half; ++k) g.push_back(upper * static_cast<double>(k) / half);
  const double lo = upper * 1e-6;
  for (std::size_t k = 0; k + half + 1 < points; ++k) {
    double t = static_cast<double>(k) / static_cast<double>(std::max<std::size_t>(1, points - half - 2));
    g.push_back(lo * std::pow(upper / lo, t));
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

}  // namespace detail

BestResponse best_response_single_item(const Instance& instance, const MessageProfile& profile,
                                       std::size_t agent, MessageSpace space) {
  if (instance.num_items() != 1) {
    throw UnsupportedError("exact best response needs a single item");
  }
  if (profile.size() != instance.num_agents()) {
    throw InputError("profile size does not match the number of agents");
  }
  if (agent >= instance.num_agents()) throw InputError("agent index out of range");
  switch (space) {
    case MessageSpace::Full:
    case MessageSpace::BudgetOnly:
      return exact_budget_response(instance, profile, agent);
    case MessageSpace::BudgetOnlyKnownValue:
      return known_value_response(instance, profile, agent);
    case MessageSpace::ValueOnly:
      return value_only_response(instance, profile, agent);
  }
  throw InternalError("unknown message space");
}

}  // namespace pacing
