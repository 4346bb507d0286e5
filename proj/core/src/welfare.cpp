#include "pacing/welfare.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>

#include "detail/simplex.hpp"

namespace pacing {
namespace {

constexpr int kBisectionSteps = 200;

double row_clicks(const Instance& inst, const Matrix& x, std::size_t i) {
  return clicks(x.row(i), inst.ctr().row(i));
}

double total_wtp(const Instance& inst, const Matrix& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    s += willingness_to_pay(inst.agent(i), std::max(0.0, row_clicks(inst, x, i)));
  }
  return s;
}

// inf{x in [0,1] : W'+(x) <= lambda}.
double demand_min(const AgentType& a, double phi, double lambda) {
  if (wtp_right_derivative(a, phi, 0.0) <= lambda) return 0.0;
  if (wtp_right_derivative(a, phi, 1.0) > lambda) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < kBisectionSteps && hi - lo > 0.0; ++k) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (wtp_right_derivative(a, phi, mid) <= lambda ? hi : lo) = mid;
  }
  return hi;
}

// sup{x in [0,1] : W'-(x) >= lambda}.
double demand_max(const AgentType& a, double phi, double lambda) {
  if (wtp_left_derivative(a, phi, 1.0) >= lambda) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < kBisectionSteps; ++k) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (wtp_left_derivative(a, phi, mid) >= lambda ? lo : hi) = mid;
  }
  return lo;
}

WelfareResult single_item_optimum(const Instance& inst) {
  const std::size_t n = inst.num_agents();
  std::vector<double> phi = inst.ctr().column(0);
  auto total_max = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (phi[i] > 0.0) s += demand_max(inst.agent(i), phi[i], lambda);
    return s;
  };
  Matrix x(n, 1, 0.0);
  bool any = std::any_of(phi.begin(), phi.end(), [](double f) { return f > 0.0; });
  if (any) {
    // Common marginal: lo keeps aggregate demand >= 1, hi drops it below 1.
    double lo = 0.0, hi = 1.0;
    while (total_max(hi) >= 1.0 && hi < 1e300) {
      lo = hi;
      hi *= 2.0;
    }
    for (int k = 0; k < kBisectionSteps; ++k) {
      double mid = lo > 0.0 && hi / lo > 4.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (total_max(mid) >= 1.0 ? lo : hi) = mid;
    }
    double used = 0.0;
    std::vector<double> upper(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (phi[i] <= 0.0) continue;
      x(i, 0) = demand_min(inst.agent(i), phi[i], hi);
      upper[i] = std::max(x(i, 0), demand_max(inst.agent(i), phi[i], lo));
      used += x(i, 0);
    }
    // Residual supply to agents at the common marginal, lowest index first.
    for (std::size_t i = 0; i < n && used < 1.0; ++i) {
      double add = std::min(upper[i] - x(i, 0), 1.0 - used);
      x(i, 0) += add;
      used += add;
    }
  }
  return liquid_welfare(inst, x);
}

// Kelley cutting planes on max sum_i s_i s.t. s_i <= W_i(q_i), supply <= 1.
// Each W_i is concave in clicks, so tangent cuts give a certified upper bound.
WelfareResult multi_item_optimum(const Instance& inst, const WelfareOptions& opt) {
  const std::size_t n = inst.num_agents(), m = inst.num_items();
  const Matrix& ctr = inst.ctr();
  const std::size_t nx = n * m, cols = nx + n;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> row(cols, 0.0);
    for (std::size_t i = 0; i < n; ++i) row[i * m + j] = 1.0;
    a.push_back(std::move(row));
    b.push_back(1.0);
  }
  std::vector<double> qmax(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) qmax[i] += ctr(i, j);
    const auto& ag = inst.agent(i);
    if (ag.budget.is_finite() || qmax[i] == 0.0) {
      std::vector<double> row(cols, 0.0);
      row[nx + i] = 1.0;
      a.push_back(std::move(row));
      b.push_back(qmax[i] == 0.0 ? willingness_to_pay(ag, 0.0)
                                 : std::min(ag.budget.as_double(), willingness_to_pay(ag, qmax[i])));
    }
  }
  auto add_cut = [&](std::size_t i, double qhat) {
    const auto& ag = inst.agent(i);
    double w = willingness_to_pay(ag, qhat);
    double slope = qhat > 0.0 ? wtp_left_derivative(ag, 1.0, qhat) : wtp_right_derivative(ag, 1.0, 0.0);
    if (!std::isfinite(slope)) slope = wtp_right_derivative(ag, 1.0, qhat);
    if (!std::isfinite(slope) || !std::isfinite(w)) return false;
    std::vector<double> row(cols, 0.0);
    row[nx + i] = 1.0;
    for (std::size_t j = 0; j < m; ++j) row[i * m + j] = -slope * ctr(i, j);
    a.push_back(std::move(row));
    b.push_back(std::max(0.0, w - slope * qhat));
    return true;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (qmax[i] == 0.0) continue;
    for (double f : {1.0, 0.5, 0.25, 0.1, 0.01}) add_cut(i, f * qmax[i]);
  }
  std::vector<double> c(cols, 0.0);
  for (std::size_t i = 0; i < n; ++i) c[nx + i] = 1.0;

  WelfareResult best;
  best.total = -1.0;
  double upper = kInf;
  std::size_t cuts = 0;
  while (true) {
    auto lp = detail::maximize(a, b, c);
    if (!lp.bounded) throw InternalError("welfare relaxation is unbounded");
    upper = std::min(upper, lp.objective);
    Matrix x(n, m, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) x(i, j) = lp.x[i * m + j];
    // Guard against round-off pushing an item's total slightly above one.
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += x(i, j);
      if (s > 1.0)
        for (std::size_t i = 0; i < n; ++i) x(i, j) /= s;
    }
    double value = total_wtp(inst, x);
    if (value > best.total) {
      best = liquid_welfare(inst, x);
    }
    double gap = upper - best.total;
    if (gap <= opt.gap_tolerance * std::max(1.0, upper)) break;
    if (cuts >= opt.max_cuts) {
      if (gap <= opt.fallback_gap * std::max(1.0, upper)) break;
      throw ConvergenceError("welfare cutting planes stalled; best " + std::to_string(best.total) +
                                 ", gap " + std::to_string(gap),
                             gap);
    }
    bool added = false;
    for (std::size_t i = 0; i < n; ++i) {
      double q = row_clicks(inst, x, i);
      double s = lp.x[nx + i];
      if (s - willingness_to_pay(inst.agent(i), q) > 0.1 * opt.gap_tolerance * std::max(1.0, upper)) {
        double qhat = q > 0.0 ? q : 1e-12 * std::max(qmax[i], 1.0);
        added = add_cut(i, qhat) || added;
        ++cuts;
      }
    }
    if (!added) break;
  }
  best.gap = std::max(0.0, upper - best.total);
  return best;
}

}  // namespace

WelfareResult liquid_welfare(const Instance& instance, const Matrix& allocation) {
  const std::size_t n = instance.num_agents(), m = instance.num_items();
  if (allocation.rows() != n || allocation.cols() != m) {
    throw InputError("allocation must be " + std::to_string(n) + "x" + std::to_string(m));
  }
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double x = allocation(i, j);
      if (!(x >= 0.0)) throw InputError("allocation entries must be non-negative");
      s += x;
    }
    if (s > 1.0 + 1e-9) throw InputError("item " + std::to_string(j) + " is over-allocated");
  }
  WelfareResult out;
  out.allocation = allocation;
  for (std::size_t i = 0; i < n; ++i) {
    double w = willingness_to_pay(instance.agent(i), row_clicks(instance, allocation, i));
    out.per_agent_wtp.push_back(w);
    out.total += w;
  }
  return out;
}

WelfareResult optimal_liquid_welfare(const Instance& instance, const WelfareOptions& options) {
  if (instance.num_items() == 1) return single_item_optimum(instance);
  return multi_item_optimum(instance, options);
}

WelfareResult brute_force_optimal_welfare(const Instance& instance, std::size_t grid_steps) {
  const std::size_t n = instance.num_agents(), m = instance.num_items();
  if (n * m > 9) throw SizeError("brute-force welfare oracle supports n * m <= 9");
  if (grid_steps < 1) throw InputError("grid_steps must be positive");

  // Every split of one item among n agents, at resolution g.
  auto splits = [n](std::size_t g) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
      if (i + 1 == n) {
        cur[i] = left;
        out.push_back(cur);
        return;
      }
      for (std::size_t k = 0; k <= left; ++k) {
        cur[i] = k;
        rec(i + 1, left - k);
      }
    };
    rec(0, g);
    return out;
  };
  auto count_for = [&](std::size_t g) {
    double per = 1.0;
    for (std::size_t k = 1; k < n; ++k) per *= static_cast<double>(g + k) / static_cast<double>(k);
    return std::pow(per, static_cast<double>(m));
  };
  std::size_t g = grid_steps;
  while (g > 1 && count_for(g) > 2e5) --g;

  auto per_item = splits(g);
  Matrix x(n, m, 0.0), best_x(n, m, 0.0);
  double best = -1.0;
  std::vector<std::size_t> idx(m, 0);
  while (true) {
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < n; ++i)
        x(i, j) = static_cast<double>(per_item[idx[j]][i]) / static_cast<double>(g);
    double v = total_wtp(instance, x);
    if (v > best) {
      best = v;
      best_x = x;
    }
    std::size_t j = 0;
    while (j < m && ++idx[j] == per_item.size()) idx[j++] = 0;
    if (j == m) break;
  }

  // Pattern search over transfers between agent pairs on one item, and opposite
  // transfers of mixed sizes on two items (needed to slide along budget kinks).
  {
    std::vector<std::array<std::size_t, 4>> pairs;  // item j: a -> b, item k: b -> a
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (a == b) continue;
          pairs.push_back({j, a, b, j});
          for (std::size_t k = 0; k < m; ++k)
            if (k != j) pairs.push_back({j, a, b, k});
        }
    const double ratios[] = {0.25, 0.5, 1.0, 2.0, 4.0};
    auto apply = [&](const std::array<std::size_t, 4>& mv, double d1, double d2, double sign) {
      auto [j, a, b, k] = mv;
      best_x(a, j) -= sign * d1;
      best_x(b, j) += sign * d1;
      if (k != j) {
        best_x(b, k) -= sign * d2;
        best_x(a, k) += sign * d2;
      }
    };
    double step = 1.0 / static_cast<double>(g);
    const double floor_step = 1e-3 / static_cast<double>(grid_steps);
    while (step >= floor_step) {
      bool improved = false;
      for (const auto& mv : pairs) {
        auto [j, a, b, k] = mv;
        for (double r : ratios) {
          if (k == j && r != 1.0) continue;
          double d1 = step, d2 = step * r;
          if (best_x(a, j) < d1 || (k != j && best_x(b, k) < d2)) continue;
          apply(mv, d1, d2, 1.0);
          double v = total_wtp(instance, best_x);
          if (v > best + 1e-15) {
            best = v;
            improved = true;
          } else {
            apply(mv, d1, d2, -1.0);
          }
        }
      }
      if (!improved) step *= 0.5;
    }
  }

  // Random ascent with directions projected to keep item totals fixed and,
  // for a random subset of agents, their clicks fixed; optionally zero entries
  // stay zero. These let steps slide along ridges where budgets bind on a face.
  {
    const std::size_t dim = n * m;
    const Matrix& ctr = instance.ctr();
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick_subset(0, (std::size_t{1} << n) - 2);
    auto basis_for = [&](std::size_t subset, bool freeze_zeros) {
      std::vector<std::vector<double>> rows;
      if (freeze_zeros) {
        for (std::size_t k = 0; k < dim; ++k) {
          if (best_x(k / m, k % m) > 1e-12) continue;
          std::vector<double> r(dim, 0.0);
          r[k] = 1.0;
          rows.push_back(std::move(r));
        }
      }
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> r(dim, 0.0);
        for (std::size_t i = 0; i < n; ++i) r[i * m + j] = 1.0;
        rows.push_back(std::move(r));
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (!(subset >> i & 1)) continue;
        std::vector<double> r(dim, 0.0);
        for (std::size_t j = 0; j < m; ++j) r[i * m + j] = ctr(i, j);
        rows.push_back(std::move(r));
      }
      std::vector<std::vector<double>> basis;
      for (auto& r : rows) {
        for (const auto& e : basis) {
          double dot = 0.0;
          for (std::size_t k = 0; k < dim; ++k) dot += r[k] * e[k];
          for (std::size_t k = 0; k < dim; ++k) r[k] -= dot * e[k];
        }
        double norm = 0.0;
        for (double v : r) norm += v * v;
        norm = std::sqrt(norm);
        if (norm < 1e-12) continue;
        for (double& v : r) v /= norm;
        basis.push_back(std::move(r));
      }
      return basis;
    };
    std::bernoulli_distribution coin(0.5);

    std::vector<double> d(dim);
    Matrix trial(n, m, 0.0);
    double step = 4.0 / static_cast<double>(g);
    const double floor_step = 1e-4 / static_cast<double>(grid_steps);
    int misses = 0;
    const int patience = 40 * static_cast<int>(dim + n);
    while (step >= floor_step) {
      for (double& v : d) v = normal(rng);
      for (const auto& e : basis_for(pick_subset(rng), coin(rng))) {
        double dot = 0.0;
        for (std::size_t k = 0; k < dim; ++k) dot += d[k] * e[k];
        for (std::size_t k = 0; k < dim; ++k) d[k] -= dot * e[k];
      }
      double norm = 0.0;
      for (double v : d) norm += v * v;
      norm = std::sqrt(norm);
      bool improved = false;
      if (norm > 1e-12) {
        double t = step / norm;
        for (std::size_t k = 0; k < dim; ++k)
          if (d[k] < 0.0) t = std::min(t, best_x(k / m, k % m) / -d[k]);
        if (t > 0.0) {
          for (std::size_t k = 0; k < dim; ++k)
            trial(k / m, k % m) = std::max(0.0, best_x(k / m, k % m) + t * d[k]);
          double v = total_wtp(instance, trial);
          if (v > best + 1e-15) {
            best = v;
            best_x = trial;
            improved = true;
          }
        }
      }
      if (improved) {
        misses = 0;
      } else if (++misses >= patience) {
        step *= 0.5;
        misses = 0;
      }
    }
  }
  return liquid_welfare(instance, best_x);
}

PoaResult poa_ratio(const Instance& instance, const Matrix& eq_allocation,
                    const WelfareResult& optimum) {
  PoaResult r;
  r.optimal = optimum.total;
  r.equilibrium = liquid_welfare(instance, eq_allocation).total;
  if (r.equilibrium <= 0.0) {
    if (r.optimal > 0.0) {
      r.ratio = kInf;
      r.diagnostic = "equilibrium liquid welfare is zero while the optimum is positive";
    } else {
      r.ratio = 1.0;
      r.diagnostic = "both welfare values are zero";
    }
    return r;
  }
  r.ratio = r.optimal / r.equilibrium;
  return r;
}

PoaResult poa_ratio(const Instance& instance, const Matrix& eq_allocation) {
  return poa_ratio(instance, eq_allocation, optimal_liquid_welfare(instance));
}

}  // namespace pacing
