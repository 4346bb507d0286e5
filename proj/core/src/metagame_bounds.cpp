#include <algorithm>
#include <cmath>
#include <functional>

#include "detail/metagame_internal.hpp"

namespace pacing {
namespace {

constexpr int kBisectionSteps = 200;

void require_single_item(const Instance& instance) {
  if (instance.num_items() != 1) {
    throw UnsupportedError("single-item characterization needs m = 1, got m = " +
                           std::to_string(instance.num_items()));
  }
}

// Marginal value of item share x: phi * V'(phi x).
double share_marginal(const AgentType& a, double phi, double x) {
  return phi * a.valuation.derivative(phi * x);
}

// inf{x in [0,1] : g(x) true}, g monotone false -> true.
double first_true(const std::function<bool(double)>& g) {
  if (g(0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < kBisectionSteps; ++k) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) ? hi : lo) = mid;
  }
  return hi;
}

// sup{x in [0,1] : g(x) true}, g monotone true -> false; 0 when never true.
double last_true(const std::function<bool(double)>& g) {
  if (!g(0.0)) return 0.0;
  if (g(1.0)) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < kBisectionSteps; ++k) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) ? lo : hi) = mid;
  }
  return lo;
}

double budget_share(const AgentType& a, double p) {
  return a.budget.is_infinite() ? kInf : a.budget.finite() / p;
}

double phi_of(const Instance& inst, std::size_t i) { return inst.ctr()(i, 0); }

double sum_y(const Instance& inst, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < inst.num_agents(); ++i)
    s += alloc_bounds(inst.agent(i), p, phi_of(inst, i)).first;
  return s;
}

double sum_z(const Instance& inst, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < inst.num_agents(); ++i)
    s += alloc_bounds(inst.agent(i), p, phi_of(inst, i)).second;
  return s;
}

// Endpoint search for weakly decreasing F on (0, inf).
// inf{p > 0 : F(p) <= target}; 0 when F is already <= target near 0.
double inf_at_most(const std::function<double(double)>& F, double target) {
  double hi = 1.0;
  while (F(hi) > target) {
    hi *= 2.0;
    if (hi > 1e300) throw InternalError("price search diverged");
  }
  double lo = hi;
  while (lo > 1e-300 && F(lo * 0.5) <= target) lo *= 0.5;
  if (lo <= 1e-300) return 0.0;
  lo *= 0.5;  // F(lo) > target
  for (int k = 0; k < kBisectionSteps; ++k) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (F(mid) <= target ? hi : lo) = mid;
  }
  return hi;
}

// sup{p > 0 : F(p) >= target}; nullopt-like -1 when F < target near 0.
double sup_at_least(const std::function<double(double)>& F, double target) {
  double lo = 1.0;
  while (F(lo) < target) {
    lo *= 0.5;
    if (lo < 1e-300) return -1.0;
  }
  double hi = lo;
  while (F(hi) >= target) {
    hi *= 2.0;
    if (hi > 1e300) throw InternalError("price search diverged");
  }
  lo = hi * 0.5;
  for (int k = 0; k < kBisectionSteps; ++k) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (F(mid) >= target ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

namespace detail {

double strict_upper_bound(const AgentType& agent, double p, double phi) {
  if (!(p > 0.0)) throw InputError("price must be positive");
  double s = last_true([&](double x) {
    return share_marginal(agent, phi, x) > p * agent.money_cost.derivative(p * x);
  });
  return std::min(budget_share(agent, p), s);
}

}  // namespace detail

std::pair<double, double> alloc_bounds(const AgentType& agent, double p, double phi) {
  if (!(p > 0.0) || !std::isfinite(p)) throw InputError("alloc_bounds needs a finite price p > 0");
  if (!(phi >= 0.0)) throw InputError("click-through rate must be non-negative");
  const double cap = budget_share(agent, p);
  double y = first_true([&](double x) {
    return share_marginal(agent, phi, x) * (1.0 - x) <= p * agent.money_cost.derivative(p * x);
  });
  // Left derivatives so the largest share with non-negative marginal is kept at kinks.
  double z = last_true([&](double x) {
    double s = x > 0.0 ? phi * agent.valuation.left_derivative(phi * x) : share_marginal(agent, phi, 0.0);
    double r = x > 0.0 ? agent.money_cost.left_derivative(p * x) : agent.money_cost.derivative(0.0);
    return s >= p * r;
  });
  y = std::clamp(std::min(cap, y), 0.0, 1.0);
  z = std::clamp(std::min(cap, z), 0.0, 1.0);
  return {y, std::max(y, z)};
}

AllocBounds alloc_bounds(const Instance& instance, double p) {
  require_single_item(instance);
  AllocBounds out;
  out.p = p;
  for (std::size_t i = 0; i < instance.num_agents(); ++i) {
    auto [y, z] = alloc_bounds(instance.agent(i), p, phi_of(instance, i));
    out.y.push_back(y);
    out.z.push_back(z);
  }
  return out;
}

bool PriceInterval::contains(double p, double tol) const {
  if (empty) return false;
  double slack = tol * std::max(1.0, std::abs(p));
  if (p < lo - slack || p > hi + slack) return false;
  if (lo_open && p <= lo && lo == 0.0) return false;
  return true;
}

PriceIntervals price_intervals(const Instance& instance) {
  require_single_item(instance);
  auto Y = [&](double p) { return sum_y(instance, p); };
  auto Z = [&](double p) { return sum_z(instance, p); };
  PriceIntervals out;

  const double low_start = inf_at_most(Y, 1.0);
  const double low_end = sup_at_least(Y, 1.0);
  if (low_end >= 0.0) {
    out.low.lo = low_start;
    out.low.hi = std::max(low_start, low_end);
    out.low.lo_open = out.low.lo == 0.0;
    out.low.hi_open = out.low.hi == 0.0;
    out.low.empty = false;
  }
  const double high_end = sup_at_least(Z, 1.0);
  if (high_end >= 0.0 && high_end >= low_start) {
    out.high.lo = low_start;
    out.high.hi = high_end;
    out.high.lo_open = out.high.lo == 0.0;
    out.high.hi_open = out.high.hi == 0.0;
    out.high.empty = false;
  }
  return out;
}

MessageProfile construct_low_price_eq(const Instance& instance, double p) {
  require_single_item(instance);
  if (!(p > 0.0)) throw InputError("low-price construction needs p > 0");
  const double y_sum = sum_y(instance, p);
  if (std::abs(y_sum - 1.0) > 1e-7) {
    throw InputError("price " + std::to_string(p) + " is outside P_L (sum of y is " +
                     std::to_string(y_sum) + ")");
  }
  std::vector<Message> msgs;
  for (std::size_t i = 0; i < instance.num_agents(); ++i) {
    double y = alloc_bounds(instance.agent(i), p, phi_of(instance, i)).first;
    msgs.emplace_back(ExtNonNeg::infinity(), ExtNonNeg(p * y));
  }
  return MessageProfile(std::move(msgs));
}

std::optional<MessageProfile> construct_high_price_eq(const Instance& instance, double p) {
  require_single_item(instance);
  if (!(p > 0.0)) throw InputError("high-price construction needs p > 0");
  const std::size_t n = instance.num_agents();
  const double tol = 1e-9;
  AllocBounds b = alloc_bounds(instance, p);
  double ys = 0.0, zs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ys += b.y[i];
    zs += b.z[i];
  }
  if (ys > 1.0 + 1e-7 || zs < 1.0 - 1e-7) {
    throw InputError("price " + std::to_string(p) + " is outside P_H");
  }
  std::vector<double> strict(n);
  for (std::size_t i = 0; i < n; ++i)
    strict[i] = std::clamp(detail::strict_upper_bound(instance.agent(i), p, phi_of(instance, i)),
                           b.y[i], b.z[i]);

  // Candidates by descending slack z - y.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
    return b.z[a] - b.y[a] > b.z[c] - b.y[c];
  });

  for (std::size_t star : order) {
    if (phi_of(instance, star) <= 0.0) continue;
    // With a positive residual share the price is pinned at p for the others, so
    // each must already sit at or above its strict bound; otherwise y suffices.
    const double target = 1.0 - b.y[star];
    const bool pinned = b.y[star] > tol;
    std::vector<double> lower(n, 0.0);
    double lo_sum = 0.0, hi_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == star) continue;
      lower[k] = pinned ? strict[k] : b.y[k];
      lo_sum += lower[k];
      hi_sum += b.z[k];
    }
    if (lo_sum > target + tol || hi_sum < target - tol) continue;

    // Water-fill from the lower bounds upward in index order.
    std::vector<double> xhat = lower;
    double left = target - lo_sum;
    for (std::size_t k = 0; k < n && left > 0.0; ++k) {
      if (k == star) continue;
      double add = std::min(b.z[k] - xhat[k], left);
      xhat[k] += add;
      left -= add;
    }
    std::vector<Message> msgs(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == star) {
        msgs[k] = Message(ExtNonNeg(p / phi_of(instance, star)), ExtNonNeg::infinity());
      } else {
        msgs[k] = Message(ExtNonNeg::infinity(), ExtNonNeg(p * std::max(0.0, xhat[k])));
      }
    }
    return MessageProfile(std::move(msgs));
  }
  return std::nullopt;
}

}  // namespace pacing
