#include <algorithm>
#include <cmath>

#include "detail/fppe_internal.hpp"

namespace pacing {
namespace detail {

Bidders::Bidders(const Matrix& ctr, const MessageProfile& profile)
    : n(ctr.rows()), m(ctr.cols()), v(n), w(n), active(n, 0) {
  if (profile.size() != n) {
    throw InputError("profile has " + std::to_string(profile.size()) + " messages for " +
                     std::to_string(n) + " agents");
  }
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = profile[i].max_bid.as_double();
    w[i] = profile[i].budget.as_double();
    bool any_ctr = false;
    for (std::size_t j = 0; j < m; ++j) any_ctr = any_ctr || ctr(i, j) > 0.0;
    active[i] = any_ctr && v[i] > 0.0 && w[i] > 0.0;
  }
}

std::vector<double> bids_from_prices(const Matrix& ctr, const Bidders& b,
                                     const std::vector<double>& prices) {
  std::vector<double> out(b.n);
  for (std::size_t i = 0; i < b.n; ++i) {
    double c = kInf;
    for (std::size_t j = 0; j < b.m; ++j) {
      if (ctr(i, j) > 0.0) c = std::min(c, prices[j] / ctr(i, j));
    }
    out[i] = std::min(b.v[i], c);
  }
  return out;
}

FppeOutcome finalize_outcome(const Matrix& ctr, const MessageProfile& profile,
                             std::vector<double> prices, Matrix allocation, FppeMethod method,
                             std::size_t iterations) {
  Bidders b(ctr, profile);
  FppeOutcome out;
  out.payments.assign(b.n, 0.0);
  for (std::size_t i = 0; i < b.n; ++i) {
    for (std::size_t j = 0; j < b.m; ++j) out.payments[i] += allocation(i, j) * prices[j];
  }
  out.prices = std::move(prices);
  out.allocation = std::move(allocation);
  out.bids_per_click = bids_from_prices(ctr, b, out.prices);
  out.multipliers.assign(b.n, 1.0);
  for (std::size_t i = 0; i < b.n; ++i) {
    if (std::isinf(b.v[i])) {
      out.multipliers[i] = 0.0;
    } else if (b.v[i] > 0.0) {
      out.multipliers[i] = std::min(1.0, out.bids_per_click[i] / b.v[i]);
    }
  }
  out.method = method;
  out.iterations = iterations;
  out.residuals = fppe_residuals(ctr, profile, out);
  return out;
}

}  // namespace detail

double FppeResiduals::max_relative() const {
  double money = std::max({bang_per_buck, payment, budget, multiplier});
  return std::max(supply, money / price_scale);
}

double FppeOutcome::revenue() const {
  double r = 0.0;
  for (double p : prices) r += p;
  return r;
}

std::string to_string(FppeMethod m) {
  switch (m) {
    case FppeMethod::Auto: return "auto";
    case FppeMethod::ClosedForm: return "closed_form";
    case FppeMethod::Exact: return "exact";
    case FppeMethod::Iterative: return "iterative";
    case FppeMethod::BruteForce: return "brute_force";
  }
  return "unknown";
}

FppeResiduals fppe_residuals(const Matrix& ctr, const MessageProfile& profile,
                             const FppeOutcome& o) {
  detail::Bidders b(ctr, profile);
  if (o.prices.size() != b.m || o.allocation.rows() != b.n || o.allocation.cols() != b.m ||
      o.payments.size() != b.n) {
    throw InputError("outcome dimensions do not match the instance");
  }
  FppeResiduals r;
  double pmax = 0.0;
  for (double p : o.prices) pmax = std::max(pmax, p);
  r.price_scale = std::max(1.0, pmax);

  for (std::size_t j = 0; j < b.m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < b.n; ++i) {
      s += o.allocation(i, j);
      r.supply = std::max(r.supply, -o.allocation(i, j));
    }
    r.supply = std::max(r.supply, o.prices[j] > 0.0 ? std::abs(s - 1.0) : std::max(0.0, s - 1.0));
  }

  std::vector<double> bids = detail::bids_from_prices(ctr, b, o.prices);
  for (std::size_t i = 0; i < b.n; ++i) {
    // Best price per click available to agent i.
    double c = kInf;
    bool any_ctr = false;
    for (std::size_t j = 0; j < b.m; ++j) {
      if (ctr(i, j) > 0.0) {
        any_ctr = true;
        c = std::min(c, o.prices[j] / ctr(i, j));
      }
    }
    double spend = 0.0;
    for (std::size_t j = 0; j < b.m; ++j) {
      double x = o.allocation(i, j);
      spend += x * o.prices[j];
      if (x <= 0.0) continue;
      double gap = ctr(i, j) > 0.0 ? o.prices[j] - ctr(i, j) * c : o.prices[j];
      double vgap = std::isinf(b.v[i]) ? 0.0 : o.prices[j] - b.v[i] * ctr(i, j);
      r.bang_per_buck = std::max(r.bang_per_buck, x * std::max({0.0, gap, vgap}));
      r.multiplier = std::max(r.multiplier, x * std::max(0.0, o.prices[j] - bids[i] * ctr(i, j)));
    }
    r.payment = std::max(r.payment, std::abs(o.payments[i] - spend));

    double t = o.payments[i];
    if (std::isfinite(b.w[i])) r.budget = std::max(r.budget, t - b.w[i]);
    if (!any_ctr || b.v[i] == 0.0) continue;
    if (std::isinf(b.w[i])) {
      // Unlimited budget: must bid its full value everywhere.
      for (std::size_t j = 0; j < b.m; ++j) {
        r.budget = std::max(r.budget, b.v[i] * ctr(i, j) - o.prices[j]);
      }
    } else {
      double alpha = std::isinf(b.v[i]) ? 0.0 : std::min(1.0, c / b.v[i]);
      r.budget = std::max(r.budget, (1.0 - alpha) * (b.w[i] - t));
    }
  }

  for (std::size_t j = 0; j < b.m; ++j) {
    double top = 0.0;
    for (std::size_t i = 0; i < b.n; ++i) {
      if (ctr(i, j) > 0.0 && b.v[i] > 0.0) top = std::max(top, bids[i] * ctr(i, j));
    }
    r.multiplier = std::max(r.multiplier, std::abs(o.prices[j] - top));
  }
  return r;
}

FppeReport verify_fppe(const Matrix& ctr, const MessageProfile& profile,
                       const FppeOutcome& outcome, double eps) {
  FppeReport rep;
  rep.residuals = fppe_residuals(ctr, profile, outcome);
  rep.eps = eps;
  rep.pass = rep.residuals.max_relative() <= eps;
  return rep;
}

FppeReport verify_fppe(const Instance& instance, const MessageProfile& profile,
                       const FppeOutcome& outcome, double eps) {
  return verify_fppe(instance.ctr(), profile, outcome, eps);
}

double PriceMonotonicity::min_price_delta() const {
  double d = kInf;
  for (double x : price_deltas) d = std::min(d, x);
  return price_deltas.empty() ? 0.0 : d;
}

}  // namespace pacing
