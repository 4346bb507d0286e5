#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "pacing/cli/run.hpp"
#include "pacing/parallel.hpp"
#include "pacing/random_instances.hpp"

namespace pacing::cli {
namespace {

const ExtNonNeg kInfMsg = ExtNonNeg::infinity();

class Params {
 public:
  Params(const ScenarioInfo& info, const std::map<std::string, std::string>& given) {
    for (const auto& p : info.params) values_[p.name] = p.default_value;
    for (const auto& [k, v] : given) {
      if (!values_.count(k)) {
        throw InputError("scenario '" + info.name + "' has no parameter '" + k + "'");
      }
      values_[k] = v;
    }
  }

  double real(const std::string& name) const {
    const std::string& s = values_.at(name);
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || !std::isfinite(x)) {
      throw InputError("parameter " + name + "='" + s + "' is not a finite number");
    }
    return x;
  }

  std::size_t count(const std::string& name) const {
    double x = real(name);
    if (x < 0.0 || x != std::floor(x) || x > 1e12) {
      throw InputError("parameter " + name + " must be a non-negative integer");
    }
    return static_cast<std::size_t>(x);
  }

  Json echo() const {
    Json j = Json::object();
    for (const auto& [k, v] : values_) j[k] = number(real(k));
    return j;
  }

 private:
  std::map<std::string, std::string> values_;
};

// Instance k of a sweep depends only on (seed, k), never on the worker count.
std::mt19937_64 instance_rng(std::uint64_t seed, std::size_t k) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  return std::mt19937_64(seq);
}

Instance two_linear(double v1, double v2) {
  return single_item_instance({budgeted_agent(v1, kInfMsg), budgeted_agent(v2, kInfMsg)});
}

Instance two_item_swap() {
  return Instance({budgeted_agent(1.0, 0.5), budgeted_agent(1.0, 0.5)},
                  Matrix::from_rows({{1.0, 0.5}, {0.5, 1.0}}));
}

Instance winner_take_all(double k) {
  return single_item_instance({budgeted_agent(k, 1.0), budgeted_agent(1.0, kInfMsg)});
}

void table1(Report& r, const Params&) {
  struct Row {
    double w1, w2, p, x1, x2, a1, a2;
  };
  const Row rows[] = {{0.5, 0.4, 0.9, 5.0 / 9.0, 4.0 / 9.0, 0.45, 0.9},
                      {0.7, 0.5, 1.0, 0.7, 0.3, 0.5, 1.0},
                      {1.5, 0.5, 1.5, 1.0, 0.0, 0.75, 1.0}};
  const double tol = 1e-12;
  Json regimes = Json::array();
  int k = 1;
  for (const auto& row : rows) {
    MessageProfile prof({Message(2.0, row.w1), Message(1.0, row.w2)});
    FppeOutcome out = solve_fppe_single_item(prof);
    std::string tag = "regime " + std::to_string(k++) + " ";
    regimes.push_back(Json{{"budgets", {row.w1, row.w2}},
                           {"price", out.prices[0]},
                           {"allocation", {out.allocation(0, 0), out.allocation(1, 0)}},
                           {"multipliers", vector_to_json(out.multipliers)}});
    r.near(tag + "price", out.prices[0], row.p, tol, "worked_example");
    r.near(tag + "x1", out.allocation(0, 0), row.x1, tol, "worked_example");
    r.near(tag + "x2", out.allocation(1, 0), row.x2, tol, "worked_example");
    r.near(tag + "alpha1", out.multipliers[0], row.a1, tol, "worked_example");
    r.near(tag + "alpha2", out.multipliers[1], row.a2, tol, "worked_example");
  }
  MessageProfile both_inf({Message(kInfMsg, 0.3), Message(kInfMsg, 0.2)});
  FppeOutcome out = solve_fppe_single_item(both_inf);
  r.near("unbounded bids price", out.prices[0], 0.5, tol, "closed_form");
  r.near("unbounded bids x1", out.allocation(0, 0), 0.6, tol, "closed_form");
  r.computed()["values"] = {2.0, 1.0};
  r.computed()["regimes"] = regimes;
}

void linear_efficient(Report& r, const Params& ps) {
  const double v1 = ps.real("v1"), v2 = ps.real("v2");
  if (!(v1 > v2 && v2 > 0.0)) throw InputError("linear_efficient needs v1 > v2 > 0");
  Instance inst = two_linear(v1, v2);
  MessageProfile prof({Message(v1, v2), Message(v2, v2)});
  double u1 = utility_of_profile(inst, prof, 0);
  BestResponse br = best_response_single_item(inst, prof, 0);
  EquilibriumReport rep = verify_pure_nash(inst, prof, 1e-7);
  FppeOutcome out = solve_fppe_single_item(prof);
  PoaResult poa = poa_ratio(inst, out.allocation);
  r.computed()["profile"] = profile_to_json(prof);
  r.computed()["price"] = out.prices[0];
  r.computed()["best_response_budget"] = number(br.message.budget.as_double());
  r.computed()["verification"] = equilibrium_report_to_json(rep);
  r.near("agent 1 utility", u1, v1 - v2, 1e-9, "closed_form");
  r.near("agent 1 best-response budget", br.message.budget.as_double(), v2, 1e-6,
         "worked_example");
  r.at_most("max deviation gain", rep.gain, 1e-7, 0.0, "worked_example");
  r.near("price of anarchy", poa.ratio, 1.0, 1e-9, "closed_form");
}

void linear_inefficient(Report& r, const Params& ps) {
  const double v1 = ps.real("v1"), v2 = ps.real("v2");
  if (!(v1 >= v2 && v2 > 0.0)) throw InputError("linear_inefficient needs v1 >= v2 > 0");
  const double gamma = v1 * v2 / ((v1 + v2) * (v1 + v2));
  Instance inst = two_linear(v1, v2);
  MessageProfile prof({Message(v1, gamma * v1), Message(v2, gamma * v2)});
  BestResponse br1 = best_response_single_item(inst, prof, 0);
  BestResponse br2 = best_response_single_item(inst, prof, 1);
  EquilibriumReport rep = verify_pure_nash(inst, prof, 1e-7);
  PriceIntervals pi = price_intervals(inst);
  const double p_low = v1 * v2 / (v1 + v2);
  MessageProfile low = construct_low_price_eq(inst, p_low);
  const bool condition = (std::sqrt(5.0) - 1.0) / 2.0 * v1 <= v2;

  r.computed()["gamma"] = gamma;
  r.computed()["profile"] = profile_to_json(prof);
  r.computed()["condition_holds"] = condition;
  r.computed()["best_response_budgets"] = {number(br1.message.budget.as_double()),
                                           number(br2.message.budget.as_double())};
  r.computed()["verification"] = equilibrium_report_to_json(rep);
  r.computed()["low_interval"] = interval_to_json(pi.low);
  if (v1 == 1.0 && v2 == 0.7) {
    r.near("gamma * v1", gamma * v1, 0.24221453, 1e-8, "worked_example");
    r.near("gamma * v2", gamma * v2, 0.16955017, 1e-8, "worked_example");
  }
  r.near("low-price interval endpoint", pi.low.lo, p_low, 1e-6, "closed_form");
  r.near("low-price constructor budget 1", low[0].budget.as_double(), gamma * v1, 1e-9,
         "closed_form");
  r.near("low-price constructor budget 2", low[1].budget.as_double(), gamma * v2, 1e-9,
         "closed_form");
  if (condition) {
    r.near("agent 1 best-response budget", br1.message.budget.as_double(), gamma * v1, 1e-6,
           "worked_example");
    r.near("agent 2 best-response budget", br2.message.budget.as_double(), gamma * v2, 1e-6,
           "worked_example");
    r.at_most("max deviation gain", rep.gain, 1e-7, 0.0, "worked_example");
  } else {
    // Outside the condition the agent prefers outbidding at price v2.
    double jump = v1 - v2 - (v1 * v1 / (v1 + v2) - gamma * v1);
    r.computed()["closed_form_gain"] = jump;
    r.at_least("max deviation gain", rep.gain, 1e-7, 0.0, "closed_form");
    r.near("gain matches outbid comparison", rep.gain, jump, 1e-6, "closed_form");
  }
}

void budgeted_nonexistence(Report& r, const Params& ps, const RunOptions& o) {
  const double eps = ps.real("eps");
  Instance inst = two_item_swap();
  std::vector<ExtNonNeg> bids, budgets;
  for (int k = 0; k <= 6; ++k) bids.push_back(0.25 * k);
  bids.push_back(kInfMsg);
  for (int k = 0; k <= 24; ++k) budgets.push_back(0.05 * k);
  GridSearchOptions gopts;
  gopts.jobs = o.jobs;
  GridSearchResult g = grid_epsilon_pne_search(inst, product_grid(bids, budgets, 2), eps, gopts);
  r.computed()["profiles"] = g.profiles;
  r.computed()["eps_pne"] = g.eps_pne.size();
  r.computed()["min_max_gain"] = g.min_max_gain;
  r.computed()["grid"] = Json{{"max_bids", "0, 0.25, ..., 1.5, inf"},
                              {"budgets", "0, 0.05, ..., 1.2"}};
  r.at_most("eps-PNE count", static_cast<double>(g.eps_pne.size()), 0.0, 0.0, "property");
  r.holds("min-max gain strictly positive", g.min_max_gain > 0.0, "property");
  r.near("min-max gain", g.min_max_gain, 0.05, 1e-9, "regression");
}

void poa_lower_bound(Report& r, const Params& ps) {
  const double k = ps.real("K");
  if (!(k > 1.0)) throw InputError("K must exceed 1");
  Instance inst = winner_take_all(k);
  WelfareResult opt = optimal_liquid_welfare(inst);
  Matrix x_star = Matrix::from_rows({{1.0 / k}, {1.0 - 1.0 / k}});
  WelfareResult at_star = liquid_welfare(inst, x_star);
  SingleItemNashResult sol = solve_pure_nash_single_item(inst);
  double ratio_at_one = std::numeric_limits<double>::quiet_NaN(), worst = 0.0;
  for (const auto& e : sol.equilibria) {
    FppeOutcome out = solve_fppe_single_item(e.profile);
    double ratio = poa_ratio(inst, out.allocation, opt).ratio;
    worst = std::max(worst, ratio);
    if (std::abs(e.price - 1.0) <= 1e-9) ratio_at_one = ratio;
  }
  const double expected = 2.0 - 1.0 / k;
  r.computed()["optimal_welfare"] = opt.total;
  r.computed()["welfare_at_reference_allocation"] = at_star.total;
  r.computed()["equilibria"] = sol.equilibria.size();
  r.computed()["ratio_at_price_one"] = number(ratio_at_one);
  r.computed()["worst_ratio"] = worst;
  r.near("optimal welfare", opt.total, expected, 1e-6, "worked_example");
  r.near("welfare of (1/K, 1-1/K)", at_star.total, expected, 1e-9, "worked_example");
  r.near("ratio at price one", ratio_at_one, expected, 1e-6, "worked_example");
  r.at_most("worst equilibrium ratio", worst, 2.0, 1e-6, "property");
}

void value_reporting_omega_n(Report& r, const Params& ps) {
  const std::size_t n_big = ps.count("N");
  const double eps = ps.real("eps");
  if (n_big < 1 || !(eps > 0.0 && eps < 1.0)) throw InputError("need N >= 1 and 0 < eps < 1");
  const double big = static_cast<double>(n_big);
  const double opt = big / 2.0;
  const double bound = (1 - eps) * (1 - eps) * 2.0 + 2 * eps * (1 - eps) * 1.0 + eps * eps * big / 2.0;
  const double ratio = opt / bound;

  // Realized welfare of the reported equilibrium under index tie-breaking.
  auto instance_for = [&](double a, double b) {
    std::vector<AgentType> ag;
    for (std::size_t i = 0; i < n_big; ++i) ag.push_back(budgeted_agent(big * big, 0.5));
    ag.push_back(budgeted_agent(a, 1.0));
    ag.push_back(budgeted_agent(b, 1.0));
    return single_item_instance(std::move(ag));
  };
  double realized = 0.0;
  for (double a : {2.0, 0.0}) {
    for (double b : {2.0, 0.0}) {
      double prob = (a > 0 ? 1 - eps : eps) * (b > 0 ? 1 - eps : eps);
      std::vector<Message> ms(n_big, Message(0.5, kInfMsg));
      ms.emplace_back(a > 0 ? 1.0 : 0.0, kInfMsg);
      ms.emplace_back(b > 0 ? 1.0 : 0.0, kInfMsg);
      Instance inst = instance_for(a, b);
      FppeOutcome out = solve_fppe_single_item(MessageProfile(std::move(ms)));
      realized += prob * liquid_welfare(inst, out.allocation).total;
    }
  }
  WelfareResult opt_zero = optimal_liquid_welfare(instance_for(0.0, 0.0));

  r.computed()["opt_lower_bound"] = opt;
  r.computed()["equilibrium_welfare_bound"] = bound;
  r.computed()["ratio"] = ratio;
  r.computed()["realized_equilibrium_welfare"] = realized;
  r.computed()["opt_when_both_values_zero"] = opt_zero.total;
  r.at_least("ratio", ratio, big / 5.0, 0.0, "closed_form");
  r.at_most("realized welfare within bound", realized, bound, 1e-9, "closed_form");
  r.near("opt with both values zero", opt_zero.total, opt, 1e-6, "closed_form");
}

struct SweepRow {
  std::size_t n = 0;
  std::size_t equilibria = 0;
  double worst_ratio = 0.0;
  double worst_gain = 0.0;
  double min_slack = kInf;
  double min_aggregate = kInf;
  double max_revenue_excess = -kInf;
  bool nested = true;
};

void single_item_nash_sweep(Report& r, const Params& ps, const RunOptions& o) {
  const std::size_t count = ps.count("count");
  const std::size_t lo = ps.count("min_agents"), hi = ps.count("max_agents");
  if (lo < 1 || hi < lo) throw InputError("need 1 <= min_agents <= max_agents");
  std::vector<SweepRow> rows(count);
  parallel_for(count, o.jobs, [&](std::size_t k) {
    auto rng = instance_rng(o.seed, k);
    RandomInstanceSpec shape;
    shape.family = PreferenceFamily::Mixed;
    shape.min_agents = lo;
    shape.max_agents = hi;
    shape.min_items = shape.max_items = 1;
    Instance inst = random_instance(rng, shape);
    SingleItemNashResult sol = solve_pure_nash_single_item(inst);
    WelfareResult opt = optimal_liquid_welfare(inst);
    SweepRow& row = rows[k];
    row.n = inst.num_agents();
    row.equilibria = sol.equilibria.size();
    const auto& L = sol.intervals.low;
    const auto& H = sol.intervals.high;
    if (!L.empty) row.nested = !H.empty && L.lo >= H.lo - 1e-9 && L.hi <= H.hi + 1e-9;
    for (const auto& e : sol.equilibria) {
      FppeOutcome out = solve_fppe_single_item(e.profile, inst.ctr().column(0));
      WelfareResult eq = liquid_welfare(inst, out.allocation);
      row.worst_ratio = std::max(row.worst_ratio, poa_ratio(inst, out.allocation, opt).ratio);
      row.worst_gain = std::max(row.worst_gain, e.report.gain);
      row.max_revenue_excess = std::max(row.max_revenue_excess, out.revenue() - eq.total);
      MixedBoundReport mb =
          mixed_deviation_bound_check(inst, MixedProfile::point_mass(e.profile), opt.allocation);
      for (double s : mb.agent_slack) row.min_slack = std::min(row.min_slack, s);
      row.min_aggregate = std::min(row.min_aggregate, mb.aggregate_slack);
    }
  });

  double worst_ratio = 0.0, worst_gain = 0.0, min_slack = kInf, min_agg = kInf;
  double revenue_excess = -kInf;
  std::size_t without = 0, not_nested = 0, total = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const SweepRow& s = rows[k];
    r.add_row(Json{{"instance", k},
                   {"agents", s.n},
                   {"equilibria", s.equilibria},
                   {"worst_ratio", number(s.worst_ratio)},
                   {"worst_gain", number(s.worst_gain)},
                   {"min_deviation_slack", number(s.min_slack)},
                   {"min_aggregate_slack", number(s.min_aggregate)},
                   {"intervals_nested", s.nested}});
    worst_ratio = std::max(worst_ratio, s.worst_ratio);
    worst_gain = std::max(worst_gain, s.worst_gain);
    min_slack = std::min(min_slack, s.min_slack);
    min_agg = std::min(min_agg, s.min_aggregate);
    revenue_excess = std::max(revenue_excess, s.max_revenue_excess);
    without += s.equilibria == 0;
    not_nested += !s.nested;
    total += s.equilibria;
  }
  r.computed()["equilibria"] = total;
  r.computed()["worst_ratio"] = number(worst_ratio);
  r.computed()["min_deviation_slack"] = number(min_slack);
  r.computed()["min_aggregate_slack"] = number(min_agg);
  r.at_most("instances without an equilibrium", static_cast<double>(without), 0.0, 0.0,
            "property");
  r.at_most("worst verified gain", worst_gain, 1e-6, 0.0, "property");
  r.at_most("worst welfare ratio", worst_ratio, 2.0, 1e-6, "closed_form");
  r.at_least("min per-agent deviation slack", min_slack, 0.0, 1e-6, "closed_form");
  r.at_least("min aggregate slack 4W(eq) - W*", min_agg, 0.0, 1e-6, "closed_form");
  r.at_most("revenue minus equilibrium welfare", revenue_excess, 0.0, 1e-8, "property");
  r.at_most("low interval outside high interval", static_cast<double>(not_nested), 0.0, 0.0,
            "property");
}

struct MonotoneRow {
  std::size_t n = 0, m = 0, agent = 0;
  double delta_w = 0.0, budget = 0.0;
  double min_price_delta = 0.0, revenue_delta = 0.0;
  double removal_min_delta = 0.0, restore_error = 0.0;
};

void budget_monotonicity_sweep(Report& r, const Params& ps, const RunOptions& o) {
  const std::size_t count = ps.count("count");
  std::vector<MonotoneRow> rows(count);
  parallel_for(count, o.jobs, [&](std::size_t k) {
    auto rng = instance_rng(o.seed, k);
    RandomInstanceSpec shape;
    shape.max_agents = 3;
    shape.max_items = 3;
    Instance inst = random_instance(rng, shape);
    MessageProfile prof = random_profile(rng, inst.num_agents());
    std::uniform_int_distribution<std::size_t> pick(0, inst.num_agents() - 1);
    std::size_t i = pick(rng);
    if (prof[i].budget.is_infinite()) {
      double w = std::uniform_real_distribution<double>(0.05, 1.5)(rng);
      prof = prof.with(i, Message(prof[i].max_bid, w));
    }
    double dw = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
    PriceMonotonicity pm = price_monotonicity_check(inst, prof, i, dw);
    FppeOutcome removed = solve_fppe(inst, prof.with(i, Message(prof[i].max_bid, 0.0)));
    FppeOutcome restored = solve_fppe(inst, prof);
    MonotoneRow& row = rows[k];
    row.n = inst.num_agents();
    row.m = inst.num_items();
    row.agent = i;
    row.delta_w = dw;
    row.budget = prof[i].budget.finite();
    row.min_price_delta = pm.min_price_delta();
    row.revenue_delta = pm.revenue_delta;
    row.removal_min_delta = kInf;
    for (std::size_t j = 0; j < inst.num_items(); ++j) {
      row.removal_min_delta = std::min(row.removal_min_delta, pm.prices_before[j] - removed.prices[j]);
      row.restore_error =
          std::max(row.restore_error, std::abs(restored.prices[j] - pm.prices_before[j]));
    }
  });
  double min_delta = kInf, max_excess = -kInf, removal = kInf, restore = 0.0;
  std::size_t price_violations = 0, revenue_violations = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const MonotoneRow& s = rows[k];
    const double excess = s.revenue_delta - (s.budget + s.delta_w);
    r.add_row(Json{{"instance", k},
                   {"agents", s.n},
                   {"items", s.m},
                   {"agent", s.agent},
                   {"budget", s.budget},
                   {"delta_w", s.delta_w},
                   {"min_price_delta", s.min_price_delta},
                   {"revenue_delta", s.revenue_delta},
                   {"removal_min_delta", s.removal_min_delta}});
    min_delta = std::min(min_delta, s.min_price_delta);
    max_excess = std::max(max_excess, excess);
    removal = std::min(removal, s.removal_min_delta);
    restore = std::max(restore, s.restore_error);
    price_violations += s.min_price_delta < -1e-9;
    revenue_violations += excess > 1e-9;
  }
  r.computed()["min_price_delta"] = number(min_delta);
  r.computed()["max_revenue_excess"] = number(max_excess);
  r.at_most("price monotonicity violations", static_cast<double>(price_violations), 0.0, 0.0,
            "closed_form");
  r.at_most("revenue increment violations", static_cast<double>(revenue_violations), 0.0, 0.0,
            "closed_form");
  r.at_least("min price change after removing the agent", removal, 0.0, 1e-9, "property");
  r.at_most("restored price error", restore, 0.0, 2 * default_tolerances().fppe, "property");
}

struct OracleRow {
  std::size_t n = 0, m = 0;
  double price_error = 0.0, welfare_error = 0.0;
};

void oracle_agreement(Report& r, const Params& ps, const RunOptions& o) {
  const std::size_t count = ps.count("count");
  const std::size_t steps = ps.count("grid_steps");
  const std::size_t wsteps = ps.count("welfare_grid_steps");
  if (steps < 1 || wsteps < 1) throw InputError("grid steps must be positive");
  std::vector<OracleRow> rows(count);
  parallel_for(count, o.jobs, [&](std::size_t k) {
    auto rng = instance_rng(o.seed, k);
    RandomInstanceSpec shape;
    shape.family = PreferenceFamily::Mixed;
    shape.max_agents = 3;
    shape.max_items = 3;
    Instance inst = random_instance(rng, shape);
    MessageProfile prof = random_profile(rng, inst.num_agents());
    FppeOutcome exact = solve_fppe(inst, prof);
    FppeOutcome oracle = brute_force_fppe_oracle(inst, prof, steps);
    OracleRow& row = rows[k];
    row.n = inst.num_agents();
    row.m = inst.num_items();
    for (std::size_t j = 0; j < row.m; ++j)
      row.price_error = std::max(row.price_error, std::abs(exact.prices[j] - oracle.prices[j]));
    row.welfare_error = std::abs(optimal_liquid_welfare(inst).total -
                                 brute_force_optimal_welfare(inst, wsteps).total);
  });
  double price_err = 0.0, welfare_err = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    r.add_row(Json{{"instance", k},
                   {"agents", rows[k].n},
                   {"items", rows[k].m},
                   {"price_error", rows[k].price_error},
                   {"welfare_error", rows[k].welfare_error}});
    price_err = std::max(price_err, rows[k].price_error);
    welfare_err = std::max(welfare_err, rows[k].welfare_error);
  }
  r.computed()["max_price_error"] = price_err;
  r.computed()["max_welfare_error"] = welfare_err;
  r.at_most("max price error vs oracle", price_err, 3.0 / static_cast<double>(steps), 0.0,
            "oracle");
  r.at_most("max welfare error vs oracle", welfare_err, 2e-3, 0.0, "oracle");
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_registry() {
  static const std::vector<ScenarioInfo> registry{
      {"table1", "single-item closed form across the three budget regimes for v=(2,1)", {}},
      {"linear_efficient",
       "efficient equilibrium of two linear agents with unbounded budgets",
       {{"v1", "1", "higher value"}, {"v2", "0.7", "lower value"}}},
      {"linear_inefficient",
       "inefficient equilibrium w=gamma*v; fails when the golden-ratio condition is violated",
       {{"v1", "1", "higher value"}, {"v2", "0.7", "lower value"}}},
      {"budgeted_nonexistence",
       "grid eps-PNE search on the two-item swap instance",
       {{"eps", "0.001", "equilibrium tolerance"}}},
      {"poa_lower_bound",
       "winner-take-all instance whose equilibrium welfare ratio is 2 - 1/K",
       {{"K", "100", "value of the budgeted agent"}}},
      {"value_reporting_omega_n",
       "value-only reporting: welfare ratio grows linearly in N",
       {{"N", "50", "number of high-value agents"}, {"eps", "0.01", "zero-value probability"}}},
      {"single_item_nash_sweep",
       "random single-item instances: solve, verify, welfare ratio and deviation bounds",
       {{"count", "200", "instances"},
        {"min_agents", "2", "fewest agents"},
        {"max_agents", "6", "most agents"}}},
      {"budget_monotonicity_sweep",
       "random budget raises: prices never fall, revenue rises by at most the new budget",
       {{"count", "500", "perturbations"}}},
      {"oracle_agreement",
       "exact solvers against brute-force FPPE and welfare oracles",
       {{"count", "50", "instances"},
        {"grid_steps", "1000", "FPPE oracle grid"},
        {"welfare_grid_steps", "1000", "welfare oracle grid"}}},
  };
  return registry;
}

Report run_scenario(const std::string& name, const RunOptions& options) {
  const auto& reg = scenario_registry();
  auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& s) { return s.name == name; });
  if (it == reg.end()) throw InputError("unknown scenario '" + name + "' (see scenario --list)");
  Params ps(*it, options.params);
  Report r(name);
  r.inputs() = ps.echo();
  const bool seeded = name.find("sweep") != std::string::npos || name == "oracle_agreement";
  if (seeded) r.inputs()["seed"] = options.seed;

  if (name == "table1") table1(r, ps);
  else if (name == "linear_efficient") linear_efficient(r, ps);
  else if (name == "linear_inefficient") linear_inefficient(r, ps);
  else if (name == "budgeted_nonexistence") budgeted_nonexistence(r, ps, options);
  else if (name == "poa_lower_bound") poa_lower_bound(r, ps);
  else if (name == "value_reporting_omega_n") value_reporting_omega_n(r, ps);
  else if (name == "single_item_nash_sweep") single_item_nash_sweep(r, ps, options);
  else if (name == "budget_monotonicity_sweep") budget_monotonicity_sweep(r, ps, options);
  else if (name == "oracle_agreement") oracle_agreement(r, ps, options);
  return r;
}

}  // namespace pacing::cli
