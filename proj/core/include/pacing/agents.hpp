#pragma once

#include <span>
#include <variant>
#include <vector>

#include "pacing/ext_real.hpp"

namespace pacing {

struct Breakpoint {
  double x = 0.0;
  double y = 0.0;
};

// Piecewise-linear function through (0,0) and the given breakpoints, extended
// past the last breakpoint with the last slope.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  explicit PiecewiseLinear(std::vector<Breakpoint> points);

  const std::vector<Breakpoint>& points() const noexcept { return points_; }
  const std::vector<double>& slopes() const noexcept { return slopes_; }

  double eval(double x) const;
  double right_slope(double x) const;
  double left_slope(double x) const;

 private:
  std::size_t segment(double x) const;  // index of the segment containing [x, x+)

  std::vector<Breakpoint> points_;
  std::vector<double> slopes_;  // slopes_[k] is the slope on [points_[k].x, points_[k+1].x)
};

// Concave non-decreasing value of clicks, V(0) = 0.
class Valuation {
 public:
  enum class Kind { Linear, Power, PiecewiseLinearConcave };

  static Valuation linear(double value_per_click);
  static Valuation power(double scale, double exponent);
  static Valuation piecewise_linear(std::vector<Breakpoint> points);

  Kind kind() const noexcept { return kind_; }
  double linear_value() const;  // throws unless kind() == Linear
  double scale() const noexcept { return a_; }
  double exponent() const noexcept { return rho_; }
  const PiecewiseLinear& pieces() const noexcept { return pwl_; }

  double operator()(double q) const;
  // Right derivative S(q); +inf at 0 for Power with exponent < 1.
  double derivative(double q) const;
  double left_derivative(double q) const;

 private:
  Kind kind_ = Kind::Linear;
  double a_ = 0.0;
  double rho_ = 1.0;
  PiecewiseLinear pwl_;
};

// Convex non-decreasing disutility of money, C(0) = 0.
class MoneyCost {
 public:
  enum class Kind { Identity, Power, PiecewiseLinearConvex };

  static MoneyCost identity();
  static MoneyCost power(double scale, double exponent);
  static MoneyCost piecewise_linear(std::vector<Breakpoint> points);

  Kind kind() const noexcept { return kind_; }
  double scale() const noexcept { return a_; }
  double exponent() const noexcept { return kappa_; }
  const PiecewiseLinear& pieces() const noexcept { return pwl_; }

  double operator()(double t) const;
  double derivative(double t) const;  // right derivative R(t)
  double left_derivative(double t) const;

  // C^{-1}(u) = inf{t : C(t) >= u}. Throws RangeError when u exceeds sup C.
  double inverse(double u) const;
  // Same, but +inf instead of RangeError.
  double inverse_or_inf(double u) const noexcept;

  bool identically_zero() const noexcept;

 private:
  Kind kind_ = Kind::Identity;
  double a_ = 1.0;
  double kappa_ = 1.0;
  PiecewiseLinear pwl_;
};

struct AgentType {
  AgentType(Valuation v, MoneyCost c, ExtNonNeg w);

  Valuation valuation;
  MoneyCost money_cost;
  ExtNonNeg budget;
};

// Convenience: linear value, identity cost.
AgentType budgeted_agent(double value_per_click, ExtNonNeg budget);

double eval_valuation(const Valuation& v, double q);
double valuation_derivative(const Valuation& v, double q);
double eval_cost(const MoneyCost& c, double t);
double cost_derivative(const MoneyCost& c, double t);
double cost_inverse(const MoneyCost& c, double u);

double clicks(std::span<const double> x_row, std::span<const double> ctr_row);

// V(sum phi x) - C(t), or -inf when t exceeds the budget.
double utility(const AgentType& agent, std::span<const double> x_row,
               std::span<const double> ctr_row, double payment);

// V((max_j phi_j / p_j) t) - C(t); DomainError on a zero price the agent values.
double utility_from_prices(const AgentType& agent, double payment,
                           std::span<const double> prices, std::span<const double> ctr_row);

// min{w, C^{-1}(V(q))}.
double willingness_to_pay(const AgentType& agent, double q);

// One-sided derivatives of x -> willingness_to_pay(agent, phi * x).
double wtp_right_derivative(const AgentType& agent, double phi, double x);
double wtp_left_derivative(const AgentType& agent, double phi, double x);

}  // namespace pacing
