#include <algorithm>
#include <cmath>
#include <optional>

#include "detail/fppe_internal.hpp"
#include "detail/max_flow.hpp"

namespace pacing {
namespace {

using detail::Bidders;

// Proportional response on money bids b_ij for the quasi-linear market whose
// equilibrium is the FPPE. Budget-unlimited agents spend v * clicks, value-unlimited
// agents spend their whole budget.
class ProportionalResponse {
 public:
  ProportionalResponse(const Matrix& ctr, const Bidders& bd)
      : ctr_(ctr), bd_(bd), bids_(bd.n, bd.m, 0.0), prices_(bd.m, 0.0) {
    for (std::size_t i = 0; i < bd.n; ++i) {
      if (!bd.active[i]) continue;
      double total_ctr = 0.0;
      for (std::size_t j = 0; j < bd.m; ++j) total_ctr += ctr(i, j);
      for (std::size_t j = 0; j < bd.m; ++j) {
        if (ctr(i, j) <= 0.0) continue;
        bids_(i, j) = std::isinf(bd.w[i]) ? bd.v[i] * ctr(i, j) : bd.w[i] * ctr(i, j) / total_ctr;
      }
    }
    update_prices();
  }

  void step(double eta) {
    for (std::size_t i = 0; i < bd_.n; ++i) {
      if (!bd_.active[i]) continue;
      double q = 0.0;
      for (std::size_t j = 0; j < bd_.m; ++j) {
        if (prices_[j] > 0.0) q += ctr_(i, j) * bids_(i, j) / prices_[j];
      }
      if (q <= 0.0) continue;
      double spend;
      if (std::isinf(bd_.v[i])) {
        spend = bd_.w[i];
      } else {
        spend = std::min(bd_.w[i], bd_.v[i] * q);
      }
      for (std::size_t j = 0; j < bd_.m; ++j) {
        if (prices_[j] <= 0.0) continue;
        double target = spend * ctr_(i, j) * bids_(i, j) / (prices_[j] * q);
        bids_(i, j) = (1.0 - eta) * bids_(i, j) + eta * target;
      }
    }
    update_prices();
  }

  const std::vector<double>& prices() const { return prices_; }

  Matrix allocation() const {
    Matrix x(bd_.n, bd_.m, 0.0);
    for (std::size_t i = 0; i < bd_.n; ++i)
      for (std::size_t j = 0; j < bd_.m; ++j)
        if (prices_[j] > 0.0) x(i, j) = bids_(i, j) / prices_[j];
    return x;
  }

 private:
  void update_prices() {
    std::fill(prices_.begin(), prices_.end(), 0.0);
    for (std::size_t i = 0; i < bd_.n; ++i)
      for (std::size_t j = 0; j < bd_.m; ++j) prices_[j] += bids_(i, j);
  }

  const Matrix& ctr_;
  const Bidders& bd_;
  Matrix bids_;
  std::vector<double> prices_;
};

// Rebuilds an exact outcome from approximate prices: guesses which agent-item pairs
// are bid ties and which agents bid their cap, fixes bid ratios by the ties,
// scales each connected component by a cap or by budget balance, and allocates by
// max-flow. Returns nothing if the guessed structure is inconsistent.
std::optional<FppeOutcome> polish_with(const Matrix& ctr, const MessageProfile& profile,
                                       const Bidders& bd, const std::vector<double>& approx,
                                       const std::vector<double>& bids, double tau) {
  const std::size_t n = bd.n;
  const std::size_t m = bd.m;
  auto edge = [&](std::size_t i, std::size_t j) {
    return bd.active[i] && ctr(i, j) > 0.0 && approx[j] > 0.0 &&
           bids[i] * ctr(i, j) >= approx[j] * (1.0 - tau);
  };
  std::vector<char> capped(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!bd.active[i]) continue;
    capped[i] = std::isinf(bd.w[i]) || (std::isfinite(bd.v[i]) && bids[i] >= bd.v[i] * (1.0 - tau));
  }

  // Relative bids r (agents) and relative prices pi (items) per component.
  std::vector<double> r(n, 0.0), pi(m, 0.0);
  std::vector<int> agent_comp(n, -1), item_comp(m, -1);
  std::vector<double> scale;
  int comps = 0;
  const double ratio_tol = 1e-9;
  for (std::size_t root = 0; root < n; ++root) {
    if (!bd.active[root] || agent_comp[root] >= 0) continue;
    int c = comps++;
    std::vector<std::size_t> agents{root}, items;
    agent_comp[root] = c;
    r[root] = 1.0;
    for (std::size_t head = 0; head < agents.size(); ++head) {
      std::size_t i = agents[head];
      for (std::size_t j = 0; j < m; ++j) {
        if (!edge(i, j)) continue;
        double pj = r[i] * ctr(i, j);
        if (item_comp[j] < 0) {
          item_comp[j] = c;
          pi[j] = pj;
          items.push_back(j);
          for (std::size_t k = 0; k < n; ++k) {
            if (!edge(k, j)) continue;
            double rk = pj / ctr(k, j);
            if (agent_comp[k] < 0) {
              agent_comp[k] = c;
              r[k] = rk;
              agents.push_back(k);
            } else if (std::abs(r[k] - rk) > ratio_tol * r[k]) {
              return std::nullopt;
            }
          }
        } else if (std::abs(pi[j] - pj) > ratio_tol * pi[j]) {
          return std::nullopt;
        }
      }
    }
    double s = kInf;
    bool has_cap = false;
    for (std::size_t i : agents) {
      if (capped[i] && std::isfinite(bd.v[i])) {
        has_cap = true;
        s = std::min(s, bd.v[i] / r[i]);
      }
    }
    if (!has_cap) {
      if (items.empty()) return std::nullopt;
      double wsum = 0.0, psum = 0.0;
      for (std::size_t i : agents) wsum += bd.w[i];
      for (std::size_t j : items) psum += pi[j];
      s = wsum / psum;
    }
    if (!std::isfinite(s)) return std::nullopt;
    scale.push_back(s);
  }

  std::vector<double> prices(m, 0.0);
  double total_price = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    if (item_comp[j] >= 0) prices[j] = scale[item_comp[j]] * pi[j];
    total_price += prices[j];
  }
  const double eps = 1e-15 * std::max(1.0, total_price);
  const double big = 2.0 * total_price + 1.0;

  const std::size_t src = 0, sink = n + m + 1;
  detail::DenseMaxFlow flow(n + m + 2);
  for (std::size_t j = 0; j < m; ++j) flow.set_capacity(1 + n + j, sink, prices[j]);
  for (std::size_t i = 0; i < n; ++i) {
    if (agent_comp[i] < 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (item_comp[j] >= 0 && edge(i, j)) flow.set_capacity(1 + i, 1 + n + j, big);
    }
  }
  // Phase 1: uncapped agents must spend their budgets exactly.
  double must_spend = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (agent_comp[i] >= 0 && !capped[i]) {
      flow.set_capacity(src, 1 + i, bd.w[i]);
      must_spend += bd.w[i];
    }
  }
  double f = flow.augment(src, sink, eps);
  if (f < must_spend - 1e-12 * std::max(1.0, must_spend)) return std::nullopt;
  // Phase 2: capped agents absorb the rest.
  for (std::size_t i = 0; i < n; ++i) {
    if (agent_comp[i] >= 0 && capped[i]) {
      flow.set_capacity(src, 1 + i, std::isinf(bd.w[i]) ? big : bd.w[i]);
    }
  }
  f = flow.augment(src, sink, eps);
  if (f < total_price - 1e-12 * std::max(1.0, total_price)) return std::nullopt;

  Matrix x(n, m, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (prices[j] > 0.0) x(i, j) = flow.flow(1 + i, 1 + n + j) / prices[j];
  return detail::finalize_outcome(ctr, profile, std::move(prices), std::move(x),
                                  FppeMethod::Exact, 0);
}

std::optional<FppeOutcome> polish(const Matrix& ctr, const MessageProfile& profile,
                                  const Bidders& bd, const std::vector<double>& approx,
                                  double accept) {
  std::vector<double> bids = detail::bids_from_prices(ctr, bd, approx);
  for (double tau : {1e-12, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
    auto cand = polish_with(ctr, profile, bd, approx, bids, tau);
    if (cand && cand->residuals.max_relative() <= accept) return cand;
  }
  return std::nullopt;
}

FppeOutcome no_money_outcome(const Matrix& ctr, const MessageProfile& profile, FppeMethod method) {
  return detail::finalize_outcome(ctr, profile, std::vector<double>(ctr.cols(), 0.0),
                                  Matrix(ctr.rows(), ctr.cols(), 0.0), method, 0);
}

double step_size(const FppeOptions& o, std::size_t iter) {
  return o.damped ? 1.0 / std::sqrt(static_cast<double>(iter)) : 1.0;
}

FppeOutcome solve_iterative(const Matrix& ctr, const MessageProfile& profile, const Bidders& bd,
                            const FppeOptions& o) {
  // Runs toward the exact tolerance; once within tol.fppe, stops when halving
  // the residual takes more than `patience` further steps.
  const std::size_t patience = 1000;
  ProportionalResponse pr(ctr, bd);
  std::optional<FppeOutcome> best;
  std::size_t last_halving = 0;
  for (std::size_t it = 1; it <= o.max_iterations; ++it) {
    pr.step(step_size(o, it));
    if (it % 25 != 0 && it != o.max_iterations) continue;
    auto out = detail::finalize_outcome(ctr, profile, pr.prices(), pr.allocation(),
                                        FppeMethod::Iterative, it);
    const double res = out.residuals.max_relative();
    if (!best || res <= 0.5 * best->residuals.max_relative()) last_halving = it;
    if (!best || res < best->residuals.max_relative()) best = std::move(out);
    const double best_res = best->residuals.max_relative();
    if (best_res <= o.tol.fppe_exact) return *best;
    if (best_res <= o.tol.fppe && it - last_halving >= patience) return *best;
  }
  if (best && best->residuals.max_relative() <= o.tol.fppe) return *best;
  throw ConvergenceError("proportional response did not reach the FPPE tolerance",
                         best ? best->residuals.max_relative() : kInf);
}

FppeOutcome solve_exact(const Matrix& ctr, const MessageProfile& profile, const Bidders& bd,
                        const FppeOptions& o) {
  ProportionalResponse pr(ctr, bd);
  if (auto c = polish(ctr, profile, bd, pr.prices(), o.tol.fppe_exact)) return *c;
  std::size_t it = 0;
  std::size_t chunk = 20;
  std::optional<FppeOutcome> best;
  while (it < o.max_iterations) {
    std::size_t stop = std::min(o.max_iterations, it + chunk);
    for (; it < stop;) pr.step(step_size(o, ++it));
    if (auto c = polish(ctr, profile, bd, pr.prices(), o.tol.fppe_exact)) {
      c->iterations = it;
      return *c;
    }
    auto approx = detail::finalize_outcome(ctr, profile, pr.prices(), pr.allocation(),
                                           FppeMethod::Iterative, it);
    if (!best || approx.residuals.max_relative() < best->residuals.max_relative()) best = approx;
    chunk = std::min<std::size_t>(chunk * 2, 5000);
  }
  if (best && best->residuals.max_relative() <= o.tol.fppe) return *best;
  throw ConvergenceError("exact FPPE path found no consistent structure",
                         best ? best->residuals.max_relative() : kInf);
}

}  // namespace

FppeOutcome solve_fppe(const Matrix& ctr, const MessageProfile& profile,
                       const FppeOptions& options) {
  Bidders bd(ctr, profile);
  if (bd.m == 0) throw InputError("instance has no items");
  FppeMethod method = options.method;
  if (method == FppeMethod::Auto) {
    if (bd.m == 1) {
      method = FppeMethod::ClosedForm;
    } else if (bd.n <= options.exact_max_agents && bd.m <= options.exact_max_items) {
      method = FppeMethod::Exact;
    } else {
      method = FppeMethod::Iterative;
    }
  }
  if (method == FppeMethod::ClosedForm) {
    if (bd.m != 1) throw InputError("closed form needs a single item");
    return solve_fppe_single_item(profile, ctr.column(0));
  }
  if (method == FppeMethod::BruteForce) return brute_force_fppe_oracle(ctr, profile, 1000);
  if (std::none_of(bd.active.begin(), bd.active.end(), [](char a) { return a != 0; })) {
    return no_money_outcome(ctr, profile, method);
  }
  return method == FppeMethod::Exact ? solve_exact(ctr, profile, bd, options)
                                     : solve_iterative(ctr, profile, bd, options);
}

FppeOutcome solve_fppe(const Instance& instance, const MessageProfile& profile,
                       const FppeOptions& options) {
  return solve_fppe(instance.ctr(), profile, options);
}

PriceMonotonicity price_monotonicity_check(const Matrix& ctr, const MessageProfile& profile,
                                           std::size_t agent, double delta_w,
                                           const FppeOptions& options) {
  if (agent >= profile.size()) throw InputError("agent index out of range");
  if (profile[agent].budget.is_infinite()) throw InputError("budget must be finite");
  if (!(delta_w > 0.0)) throw InputError("budget increment must be positive");
  const Message& m = profile[agent];
  double new_budget = m.budget.finite() + delta_w;
  auto before = solve_fppe(ctr, profile, options);
  auto after = solve_fppe(ctr, profile.with(agent, Message(m.max_bid, new_budget)), options);
  PriceMonotonicity out;
  out.prices_before = before.prices;
  out.prices_after = after.prices;
  out.new_budget = new_budget;
  for (std::size_t j = 0; j < before.prices.size(); ++j) {
    out.price_deltas.push_back(after.prices[j] - before.prices[j]);
  }
  out.revenue_delta = after.revenue() - before.revenue();
  return out;
}

PriceMonotonicity price_monotonicity_check(const Instance& instance,
                                           const MessageProfile& profile, std::size_t agent,
                                           double delta_w, const FppeOptions& options) {
  return price_monotonicity_check(instance.ctr(), profile, agent, delta_w, options);
}

}  // namespace pacing
