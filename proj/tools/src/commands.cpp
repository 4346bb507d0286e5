#include <algorithm>

#include "pacing/cli/run.hpp"

namespace pacing::cli {
namespace {

MessageProfile require_profile(const RunOptions& o, const Instance& inst) {
  if (!o.profile) throw InputError("--profile is required for this subcommand");
  TextSource src = read_inline_or_file(*o.profile);
  MessageProfile p = parse_profile(src.text, src.name);
  if (p.size() != inst.num_agents()) {
    throw InputError(src.name + ": profile has " + std::to_string(p.size()) + " messages for " +
                     std::to_string(inst.num_agents()) + " agents");
  }
  return p;
}

Matrix require_allocation(const std::string& arg, const Instance& inst) {
  TextSource src = read_inline_or_file(arg);
  Matrix x = parse_allocation(src.text, src.name);
  if (x.rows() != inst.num_agents() || x.cols() != inst.num_items()) {
    throw InputError(src.name + ": allocation must be " + std::to_string(inst.num_agents()) + "x" +
                     std::to_string(inst.num_items()));
  }
  return x;
}

FppeOutcome solve(const Instance& inst, const MessageProfile& p) {
  return inst.num_items() == 1 ? solve_fppe_single_item(p, inst.ctr().column(0))
                               : solve_fppe(inst, p);
}

void cmd_fppe(Report& r, const Instance& inst, const RunOptions& o) {
  MessageProfile p = require_profile(o, inst);
  r.inputs()["profile"] = profile_to_json(p);
  FppeOutcome out = solve(inst, p);
  r.computed()["outcome"] = outcome_to_json(out);
  const double eps = default_tolerances().fppe;
  FppeReport v = verify_fppe(inst, p, out, eps);
  r.at_most("fppe residual", v.residuals.max_relative(), 0.0, eps, "property");
}

void cmd_best_response(Report& r, const Instance& inst, const RunOptions& o) {
  MessageProfile p = require_profile(o, inst);
  MessageSpace space = message_space_from_string(o.space);
  r.inputs()["profile"] = profile_to_json(p);
  r.inputs()["agent"] = o.agent;
  r.inputs()["space"] = o.space;
  if (o.agent >= inst.num_agents()) throw InputError("--agent out of range");
  BestResponse br = best_response_single_item(inst, p, o.agent, space);
  double current = utility_of_profile(inst, p, o.agent);
  r.computed()["message"] = message_to_json(br.message);
  r.computed()["utility"] = number(br.utility);
  r.computed()["current_utility"] = number(current);
  r.computed()["attained"] = br.attained;
  if (!br.attained) r.computed()["witness_budget"] = number(br.witness_budget);
  r.computed()["pieces"] = br.pieces;
  r.computed()["exact"] = br.exact;
}

void cmd_verify_nash(Report& r, const Instance& inst, const RunOptions& o) {
  MessageProfile p = require_profile(o, inst);
  MessageSpace space = message_space_from_string(o.space);
  const auto& tol = default_tolerances();
  double eps = o.eps.value_or(inst.num_items() == 1 ? tol.nash_single_item : tol.nash_grid);
  NashOptions opts;
  opts.grid_points = o.grid;
  r.inputs()["profile"] = profile_to_json(p);
  r.inputs()["eps"] = eps;
  r.inputs()["space"] = o.space;
  if (inst.num_items() > 1) r.inputs()["grid"] = o.grid;
  EquilibriumReport rep = verify_pure_nash(inst, p, eps, space, opts);
  r.computed()["report"] = equilibrium_report_to_json(rep);
  r.at_most("max deviation gain", rep.gain, eps, 0.0, "property");
}

void cmd_solve_nash(Report& r, const Instance& inst, const RunOptions& o) {
  double eps = o.eps.value_or(1e-6);
  r.inputs()["eps"] = eps;
  SingleItemNashResult res = solve_pure_nash_single_item(inst, eps);
  r.computed()["low_interval"] = interval_to_json(res.intervals.low);
  r.computed()["high_interval"] = interval_to_json(res.intervals.high);
  r.computed()["lowest_price"] = number(res.lowest_price);
  r.computed()["highest_price"] = number(res.highest_price);
  Json eqs = Json::array();
  double worst = 0.0;
  for (const auto& e : res.equilibria) {
    eqs.push_back(Json{{"price", number(e.price)},
                       {"kind", to_string(e.kind)},
                       {"gain", number(e.report.gain)},
                       {"profile", profile_to_json(e.profile)}});
    worst = std::max(worst, e.report.gain);
  }
  r.computed()["equilibria"] = eqs;
  r.at_least("equilibria found", static_cast<double>(res.equilibria.size()), 1.0, 0.0,
             "property");
  r.at_most("worst verified gain", worst, eps, 0.0, "property");
}

void cmd_welfare(Report& r, const Instance& inst, const RunOptions& o) {
  if (o.alloc) {
    Matrix x = require_allocation(*o.alloc, inst);
    r.inputs()["allocation"] = matrix_to_json(x);
    r.computed()["welfare"] = welfare_to_json(liquid_welfare(inst, x));
  } else {
    r.computed()["optimal"] = welfare_to_json(optimal_liquid_welfare(inst));
  }
}

void cmd_poa(Report& r, const Instance& inst, const RunOptions& o) {
  Matrix x;
  if (o.alloc) {
    x = require_allocation(*o.alloc, inst);
  } else {
    MessageProfile p = require_profile(o, inst);
    r.inputs()["profile"] = profile_to_json(p);
    x = solve(inst, p).allocation;
  }
  r.inputs()["allocation"] = matrix_to_json(x);
  PoaResult res = poa_ratio(inst, x);
  r.computed()["optimal"] = number(res.optimal);
  r.computed()["equilibrium"] = number(res.equilibrium);
  r.computed()["ratio"] = number(res.ratio);
  if (!res.diagnostic.empty()) r.computed()["diagnostic"] = res.diagnostic;
}

}  // namespace

const std::vector<std::string>& file_commands() {
  static const std::vector<std::string> names{"fppe",       "best-response", "verify-nash",
                                              "solve-nash", "welfare",       "poa"};
  return names;
}

Report run_on_instance(const std::string& command, const InstanceFile& file,
                       const RunOptions& options) {
  Report r(command);
  r.inputs()["instance"] = instance_to_json(file.instance, file.seed);
  const Instance& inst = file.instance;
  if (command == "fppe") {
    cmd_fppe(r, inst, options);
  } else if (command == "best-response") {
    cmd_best_response(r, inst, options);
  } else if (command == "verify-nash") {
    cmd_verify_nash(r, inst, options);
  } else if (command == "solve-nash") {
    cmd_solve_nash(r, inst, options);
  } else if (command == "welfare") {
    cmd_welfare(r, inst, options);
  } else if (command == "poa") {
    cmd_poa(r, inst, options);
  } else {
    throw InputError("unknown subcommand '" + command + "'");
  }
  return r;
}

Report run_file(const std::string& command, const std::string& instance_path,
                const RunOptions& options) {
  return run_on_instance(command, load_instance(instance_path), options);
}

}  // namespace pacing::cli
