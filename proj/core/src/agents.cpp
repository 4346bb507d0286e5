#include "pacing/agents.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pacing {
namespace {

void require_nonneg_finite(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw InputError(std::string(what) + " must be finite and non-negative, got " +
                     std::to_string(x));
  }
}

}  // namespace

PiecewiseLinear::PiecewiseLinear(std::vector<Breakpoint> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw InputError("piecewise-linear function needs at least 2 points");
  if (points_.front().x != 0.0 || points_.front().y != 0.0) {
    throw InputError("piecewise-linear function must start at (0, 0)");
  }
  for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
    const auto& a = points_[k];
    const auto& b = points_[k + 1];
    if (!std::isfinite(b.x) || !std::isfinite(b.y) || !(b.x > a.x)) {
      throw InputError("breakpoints must be finite with strictly increasing x");
    }
    slopes_.push_back((b.y - a.y) / (b.x - a.x));
  }
}

std::size_t PiecewiseLinear::segment(double x) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), x,
                             [](double v, const Breakpoint& p) { return v < p.x; });
  std::size_t k = static_cast<std::size_t>(it - points_.begin());
  k = k == 0 ? 0 : k - 1;
  return std::min(k, slopes_.size() - 1);
}

double PiecewiseLinear::eval(double x) const {
  std::size_t k = segment(x);
  return points_[k].y + slopes_[k] * (x - points_[k].x);
}

double PiecewiseLinear::right_slope(double x) const { return slopes_[segment(x)]; }

double PiecewiseLinear::left_slope(double x) const {
  if (x <= 0.0) return slopes_.front();
  // Largest k with points_[k].x < x.
  auto it = std::lower_bound(points_.begin(), points_.end(), x,
                             [](const Breakpoint& p, double v) { return p.x < v; });
  std::size_t k = static_cast<std::size_t>(it - points_.begin()) - 1;
  return slopes_[std::min(k, slopes_.size() - 1)];
}

Valuation Valuation::linear(double value_per_click) {
  require_nonneg_finite(value_per_click, "linear value");
  Valuation v;
  v.kind_ = Kind::Linear;
  v.a_ = value_per_click;
  return v;
}

Valuation Valuation::power(double scale, double exponent) {
  require_nonneg_finite(scale, "power valuation scale");
  if (!(exponent > 0.0 && exponent <= 1.0)) {
    throw InputError("power valuation exponent must lie in (0, 1]");
  }
  Valuation v;
  v.kind_ = Kind::Power;
  v.a_ = scale;
  v.rho_ = exponent;
  return v;
}

Valuation Valuation::piecewise_linear(std::vector<Breakpoint> points) {
  Valuation v;
  v.kind_ = Kind::PiecewiseLinearConcave;
  v.pwl_ = PiecewiseLinear(std::move(points));
  const auto& s = v.pwl_.slopes();
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] < 0.0) throw InputError("valuation slopes must be non-negative");
    if (k > 0 && s[k] > s[k - 1]) throw InputError("valuation slopes must be non-increasing");
  }
  return v;
}

double Valuation::linear_value() const {
  if (kind_ != Kind::Linear) throw UnsupportedError("valuation is not linear");
  return a_;
}

double Valuation::operator()(double q) const {
  if (!(q >= 0.0)) throw InputError("clicks must be non-negative");
  switch (kind_) {
    case Kind::Linear:
      return a_ * q;
    case Kind::Power:
      return q == 0.0 ? 0.0 : a_ * std::pow(q, rho_);
    case Kind::PiecewiseLinearConcave:
      return pwl_.eval(q);
  }
  return 0.0;
}

double Valuation::derivative(double q) const {
  if (!(q >= 0.0)) throw InputError("clicks must be non-negative");
  switch (kind_) {
    case Kind::Linear:
      return a_;
    case Kind::Power:
      if (rho_ == 1.0) return a_;
      if (q == 0.0) return a_ > 0.0 ? kInf : 0.0;
      return a_ * rho_ * std::pow(q, rho_ - 1.0);
    case Kind::PiecewiseLinearConcave:
      return pwl_.right_slope(q);
  }
  return 0.0;
}

double Valuation::left_derivative(double q) const {
  if (kind_ == Kind::PiecewiseLinearConcave) return pwl_.left_slope(q);
  return derivative(q);
}

MoneyCost MoneyCost::identity() { return MoneyCost{}; }

MoneyCost MoneyCost::power(double scale, double exponent) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InputError("power cost scale must be positive");
  if (!(exponent >= 1.0) || !std::isfinite(exponent)) {
    throw InputError("power cost exponent must be >= 1");
  }
  MoneyCost c;
  c.kind_ = Kind::Power;
  c.a_ = scale;
  c.kappa_ = exponent;
  return c;
}

MoneyCost MoneyCost::piecewise_linear(std::vector<Breakpoint> points) {
  MoneyCost c;
  c.kind_ = Kind::PiecewiseLinearConvex;
  c.pwl_ = PiecewiseLinear(std::move(points));
  const auto& s = c.pwl_.slopes();
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] < 0.0) throw InputError("cost slopes must be non-negative");
    if (k > 0 && s[k] < s[k - 1]) throw InputError("cost slopes must be non-decreasing");
  }
  return c;
}

double MoneyCost::operator()(double t) const {
  if (!(t >= 0.0)) throw InputError("payment must be non-negative");
  switch (kind_) {
    case Kind::Identity:
      return t;
    case Kind::Power:
      return a_ * std::pow(t, kappa_);
    case Kind::PiecewiseLinearConvex:
      return pwl_.eval(t);
  }
  return 0.0;
}

double MoneyCost::derivative(double t) const {
  if (!(t >= 0.0)) throw InputError("payment must be non-negative");
  switch (kind_) {
    case Kind::Identity:
      return 1.0;
    case Kind::Power:
      if (kappa_ == 1.0) return a_;
      return a_ * kappa_ * std::pow(t, kappa_ - 1.0);
    case Kind::PiecewiseLinearConvex:
      return pwl_.right_slope(t);
  }
  return 0.0;
}

double MoneyCost::left_derivative(double t) const {
  if (kind_ == Kind::PiecewiseLinearConvex) return pwl_.left_slope(t);
  return derivative(t);
}

bool MoneyCost::identically_zero() const noexcept {
  if (kind_ != Kind::PiecewiseLinearConvex) return false;
  return std::all_of(pwl_.slopes().begin(), pwl_.slopes().end(),
                     [](double s) { return s == 0.0; });
}

double MoneyCost::inverse_or_inf(double u) const noexcept {
  if (!(u > 0.0)) return 0.0;
  switch (kind_) {
    case Kind::Identity:
      return u;
    case Kind::Power:
      return std::pow(u / a_, 1.0 / kappa_);
    case Kind::PiecewiseLinearConvex: {
      if (identically_zero()) return kInf;
      // Bisect over breakpoints for the first one reaching u, then invert the segment.
      const auto& pts = pwl_.points();
      std::size_t lo = 0;
      std::size_t hi = pts.size();
      while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (pts[mid].y >= u) hi = mid; else lo = mid + 1;
      }
      std::size_t k = lo == pts.size() ? pts.size() - 1 : (lo == 0 ? 0 : lo - 1);
      k = std::min(k, pwl_.slopes().size() - 1);
      double s = pwl_.slopes()[k];
      return pts[k].x + (u - pts[k].y) / s;
    }
  }
  return 0.0;
}

double MoneyCost::inverse(double u) const {
  if (std::isnan(u) || u < 0.0) throw InputError("cost inverse needs a non-negative argument");
  double t = inverse_or_inf(u);
  if (std::isinf(t)) {
    throw RangeError("disutility " + std::to_string(u) + " lies above the range of the cost");
  }
  return t;
}

AgentType::AgentType(Valuation v, MoneyCost c, ExtNonNeg w)
    : valuation(std::move(v)), money_cost(std::move(c)), budget(w) {
  if (budget.is_infinite() && money_cost.identically_zero()) {
    throw InputError("an agent with infinite budget needs a money cost that is not identically zero");
  }
}

AgentType budgeted_agent(double value_per_click, ExtNonNeg budget) {
  return AgentType(Valuation::linear(value_per_click), MoneyCost::identity(), budget);
}

double eval_valuation(const Valuation& v, double q) { return v(q); }
double valuation_derivative(const Valuation& v, double q) { return v.derivative(q); }
double eval_cost(const MoneyCost& c, double t) { return c(t); }
double cost_derivative(const MoneyCost& c, double t) { return c.derivative(t); }
double cost_inverse(const MoneyCost& c, double u) { return c.inverse(u); }

double clicks(std::span<const double> x_row, std::span<const double> ctr_row) {
  if (x_row.size() != ctr_row.size()) throw InputError("allocation and ctr rows differ in length");
  double q = 0.0;
  for (std::size_t j = 0; j < x_row.size(); ++j) q += ctr_row[j] * x_row[j];
  return q;
}

double utility(const AgentType& agent, std::span<const double> x_row,
               std::span<const double> ctr_row, double payment) {
  if (agent.budget.exceeded_by(payment)) return -kInf;
  return agent.valuation(std::max(0.0, clicks(x_row, ctr_row))) - agent.money_cost(payment);
}

double utility_from_prices(const AgentType& agent, double payment,
                           std::span<const double> prices, std::span<const double> ctr_row) {
  if (prices.size() != ctr_row.size()) throw InputError("prices and ctr rows differ in length");
  if (!(payment >= 0.0)) throw InputError("payment must be non-negative");
  if (agent.budget.exceeded_by(payment)) return -kInf;
  if (payment == 0.0) return 0.0;
  double ratio = 0.0;
  for (std::size_t j = 0; j < prices.size(); ++j) {
    if (ctr_row[j] <= 0.0) continue;
    if (prices[j] <= 0.0) {
      throw DomainError("zero price on an item with positive ctr; use the explicit allocation");
    }
    ratio = std::max(ratio, ctr_row[j] / prices[j]);
  }
  return agent.valuation(ratio * payment) - agent.money_cost(payment);
}

double willingness_to_pay(const AgentType& agent, double q) {
  double g = agent.money_cost.inverse_or_inf(agent.valuation(q));
  return std::min(agent.budget.as_double(), g);
}

double wtp_right_derivative(const AgentType& agent, double phi, double x) {
  double q = phi * x;
  double g = agent.money_cost.inverse_or_inf(agent.valuation(q));
  if (g >= agent.budget.as_double()) return 0.0;
  double s = agent.valuation.derivative(q) * phi;
  if (s <= 0.0) return 0.0;
  double r = agent.money_cost.derivative(g);
  return r <= 0.0 ? kInf : s / r;
}

double wtp_left_derivative(const AgentType& agent, double phi, double x) {
  if (x <= 0.0) return kInf;
  double q = phi * x;
  double g = agent.money_cost.inverse_or_inf(agent.valuation(q));
  if (g > agent.budget.as_double()) return 0.0;
  double s = agent.valuation.left_derivative(q) * phi;
  if (s <= 0.0) return 0.0;
  double r = agent.money_cost.left_derivative(g);
  return r <= 0.0 ? kInf : s / r;
}

}  // namespace pacing
