#include <algorithm>
#include <cmath>

#include "detail/fppe_internal.hpp"
#include "detail/max_flow.hpp"

namespace pacing {
namespace {

using detail::Bidders;

// Budget-feasible pacing outcomes over a grid of bids per click b_i in [0, cap_i].
// Ties and budgets are relaxed by an absolute slack tau matched to the grid step,
// so the grid point nearest the FPPE stays feasible.
class BfpmSearch {
 public:
  BfpmSearch(const Matrix& ctr, const Bidders& bd) : ctr_(ctr), bd_(bd) {}

  std::vector<double> prices(const std::vector<double>& b) const {
    std::vector<double> p(bd_.m, 0.0);
    for (std::size_t i = 0; i < bd_.n; ++i) {
      if (!bd_.active[i]) continue;
      for (std::size_t j = 0; j < bd_.m; ++j) p[j] = std::max(p[j], b[i] * ctr_(i, j));
    }
    return p;
  }

  // True when every positive-price item can be sold to near-highest bidders
  // within budgets plus slack; fills x with one such allocation.
  bool feasible(const std::vector<double>& b, double tau, Matrix* x) const {
    std::vector<double> p = prices(b);
    double total = 0.0;
    for (double v : p) total += v;
    if (total <= 0.0) {
      if (x) *x = Matrix(bd_.n, bd_.m, 0.0);
      return true;
    }
    const std::size_t n = bd_.n, m = bd_.m, src = 0, sink = n + m + 1;
    detail::DenseMaxFlow flow(n + m + 2);
    const double big = 2.0 * total + 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!bd_.active[i]) continue;
      flow.set_capacity(src, 1 + i,
                        std::isinf(bd_.w[i]) ? big : bd_.w[i] + tau * static_cast<double>(m));
      for (std::size_t j = 0; j < m; ++j) {
        if (ctr_(i, j) > 0.0 && p[j] > 0.0 && b[i] * ctr_(i, j) >= p[j] - tau) {
          flow.set_capacity(1 + i, 1 + n + j, big);
        }
      }
    }
    for (std::size_t j = 0; j < m; ++j) flow.set_capacity(1 + n + j, sink, p[j]);
    double f = flow.augment(src, sink, 1e-15 * total);
    if (f < total - 1e-12 * total) return false;
    if (x) {
      *x = Matrix(n, m, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (p[j] > 0.0) (*x)(i, j) = flow.flow(1 + i, 1 + n + j) / p[j];
    }
    return true;
  }

 private:
  const Matrix& ctr_;
  const Bidders& bd_;
};

// Ranked by normalized multiplier mass, then revenue.
struct Candidate {
  std::vector<double> b;
  double mass = -1.0;
  double revenue = 0.0;
  bool better_than(const Candidate& o) const {
    const double tol = 1e-12;
    if (mass > o.mass + tol) return true;
    if (mass < o.mass - tol) return false;
    return revenue > o.revenue;
  }
};

}  // namespace

FppeOutcome brute_force_fppe_oracle(const Matrix& ctr, const MessageProfile& profile,
                                    std::size_t grid_steps) {
  Bidders bd(ctr, profile);
  if (bd.n > 3 || bd.m > 3) throw SizeError("brute-force FPPE oracle supports n, m <= 3");
  if (grid_steps < 2) throw InputError("grid_steps must be at least 2");

  // Upper bound on any FPPE price: total finite budget plus every reserve.
  double pmax = 0.0;
  double ctr_max = 0.0;
  for (std::size_t i = 0; i < bd.n; ++i) {
    for (std::size_t j = 0; j < bd.m; ++j) ctr_max = std::max(ctr_max, ctr(i, j));
    if (!bd.active[i]) continue;
    if (std::isfinite(bd.w[i])) {
      pmax += bd.w[i];
    } else {
      double top = 0.0;
      for (std::size_t j = 0; j < bd.m; ++j) top = std::max(top, bd.v[i] * ctr(i, j));
      pmax += top;
    }
  }

  std::vector<double> base(bd.n, 0.0), cap(bd.n, 0.0);
  std::vector<std::size_t> free_agents;
  for (std::size_t i = 0; i < bd.n; ++i) {
    if (!bd.active[i]) continue;
    if (std::isinf(bd.w[i])) {
      base[i] = bd.v[i];  // unlimited budget: never paced
      continue;
    }
    double min_ctr = kInf;
    for (std::size_t j = 0; j < bd.m; ++j)
      if (ctr(i, j) > 0.0) min_ctr = std::min(min_ctr, ctr(i, j));
    cap[i] = std::isfinite(bd.v[i]) ? bd.v[i] : pmax / min_ctr;
    free_agents.push_back(i);
  }
  const std::size_t d = free_agents.size();

  BfpmSearch search(ctr, bd);
  Candidate best;
  auto consider = [&](const std::vector<double>& b, double tau) {
    Candidate c{b, 0.0, 0.0};
    for (std::size_t i : free_agents) c.mass += b[i] / cap[i];
    for (double v : search.prices(b)) c.revenue += v;
    if (!c.better_than(best)) return;
    if (search.feasible(b, tau, nullptr)) best = std::move(c);
  };

  // Box grid lo_k + step_k * idx_k, idx_k in [0, points), clamped to [0, cap].
  auto sweep = [&](const std::vector<double>& lo, const std::vector<double>& step,
                   std::size_t points, double tau) {
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> b = base;
    while (true) {
      for (std::size_t k = 0; k < d; ++k) {
        b[free_agents[k]] = std::clamp(lo[k] + step[k] * static_cast<double>(idx[k]), 0.0,
                                       cap[free_agents[k]]);
      }
      consider(b, tau);
      std::size_t k = 0;
      while (k < d && ++idx[k] == points) idx[k++] = 0;
      if (k == d) break;
    }
  };
  // Nearest-point rounding of the FPPE moves each tie by at most step * ctr.
  auto slack_for = [&](const std::vector<double>& step) {
    double s = 0.0;
    for (double h : step) s = std::max(s, h);
    return s * ctr_max;
  };

  double tau = 0.0;
  if (d == 0) {
    consider(base, 0.0);
  } else {
    std::size_t coarse = std::min<std::size_t>(
        grid_steps, static_cast<std::size_t>(std::pow(30000.0, 1.0 / static_cast<double>(d))));
    std::vector<double> lo(d, 0.0), step(d);
    for (std::size_t k = 0; k < d; ++k) step[k] = cap[free_agents[k]] / static_cast<double>(coarse);
    tau = slack_for(step);
    sweep(lo, step, coarse + 1, tau);
    if (best.mass < 0.0) throw InternalError("no budget-feasible pacing outcome on the grid");

    // Each level halves the step. The relaxed optimum slides down as the slack
    // shrinks, so the window below the incumbent widens until it contains a
    // feasible point that is not on its lower edge.
    const double target = 1.0 / (8.0 * static_cast<double>(grid_steps));
    const double above = 4.0;
    const double max_points = 2e6;
    for (int level = 0; level < 80; ++level) {
      bool resolved = true;
      for (std::size_t k = 0; k < d; ++k) {
        resolved = resolved && step[k] <= target * std::min(1.0, cap[free_agents[k]]);
      }
      if (level >= 2 && resolved) break;
      const Candidate incumbent = best;
      for (std::size_t k = 0; k < d; ++k) step[k] *= 0.5;
      tau = slack_for(step);
      bool found = false;
      for (double below = 8.0; !found; below *= 2.0) {
        const auto points = static_cast<std::size_t>(below + above) + 1;
        if (std::pow(static_cast<double>(points), static_cast<double>(d)) > max_points) break;
        for (std::size_t k = 0; k < d; ++k) lo[k] = incumbent.b[free_agents[k]] - below * step[k];
        best = Candidate{};
        sweep(lo, step, points, tau);
        if (best.mass < 0.0) continue;
        found = true;
        for (std::size_t k = 0; k < d; ++k) {
          const double bk = best.b[free_agents[k]];
          if (lo[k] > 0.0 && bk < lo[k] + 0.5 * step[k]) found = false;
        }
      }
      if (!found) throw InternalError("oracle refinement lost every feasible point");
    }
  }

  Matrix x;
  if (!search.feasible(best.b, tau, &x)) throw InternalError("oracle optimum lost feasibility");
  return detail::finalize_outcome(ctr, profile, search.prices(best.b), std::move(x),
                                  FppeMethod::BruteForce, 0);
}

FppeOutcome brute_force_fppe_oracle(const Instance& instance, const MessageProfile& profile,
                                    std::size_t grid_steps) {
  return brute_force_fppe_oracle(instance.ctr(), profile, grid_steps);
}

}  // namespace pacing
