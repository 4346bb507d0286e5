#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "pacing/cli/run.hpp"

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kInputError = 2, kInternalError = 3 };

struct Flags {
  pacing::cli::RunOptions run;
  std::string format = "json";
  bool timing = false;
  std::vector<std::string> params;
  std::string instance;
  std::string scenario;
  bool list = false;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app->add_option("--seed", f.run.seed, "Seed for random sweeps");
  app->add_option("--jobs", f.run.jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app->add_flag("--timing", f.timing, "Include wall-clock time in the report");
}

void add_instance_flags(CLI::App* app, Flags& f) {
  app->add_option("instance", f.instance, "Instance JSON file")->required();
  app->add_option("--profile", f.run.profile, "Message profile (path or inline JSON)");
  app->add_option("--alloc", f.run.alloc, "Allocation matrix (path or inline JSON)");
  app->add_option("--eps", f.run.eps, "Equilibrium tolerance")->check(CLI::NonNegativeNumber);
  app->add_option("--space", f.run.space, "Message space")
      ->check(CLI::IsMember({"full", "budget-only", "budget-only-known-value", "value-only"}));
  app->add_option("--grid", f.run.grid, "Grid points for multi-item verification")
      ->check(CLI::PositiveNumber);
  app->add_option("--agent", f.run.agent, "Agent index for best-response");
}

void list_scenarios(std::ostream& out) {
  for (const auto& s : pacing::cli::scenario_registry()) {
    out << s.name << "  " << s.summary << "\n";
    for (const auto& p : s.params) {
      out << "    --param " << p.name << "=" << p.default_value << "  " << p.help << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-price pacing equilibria, budget metagame and liquid welfare"};
  app.require_subcommand(1);
  Flags f;

  for (const auto& name : pacing::cli::file_commands()) {
    CLI::App* sub = app.add_subcommand(name, "Run " + name + " on an instance file");
    add_common(sub, f);
    add_instance_flags(sub, f);
  }
  CLI::App* scen = app.add_subcommand("scenario", "Run a registered scenario");
  add_common(scen, f);
  scen->add_option("name", f.scenario, "Scenario name");
  scen->add_option("--param", f.params, "Scenario parameter key=value (repeatable)");
  scen->add_flag("--list", f.list, "List scenarios and their parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    CLI::App* used = app.get_subcommands().front();
    std::optional<pacing::cli::Report> report;
    if (used == scen) {
      if (f.list) {
        list_scenarios(std::cout);
        return kPass;
      }
      if (f.scenario.empty()) throw pacing::InputError("scenario name required (or --list)");
      for (const auto& kv : f.params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
          throw pacing::InputError("--param expects key=value, got '" + kv + "'");
        }
        f.run.params[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      report.emplace(pacing::cli::run_scenario(f.scenario, f.run));
    } else {
      report.emplace(pacing::cli::run_file(used->get_name(), f.instance, f.run));
    }
    if (f.timing) {
      report->set_wall_clock(
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    std::cout << report->render(f.format);
    if (f.format != "text") {
      std::cerr << report->id() << ": " << (report->pass() ? "PASS" : "FAIL") << "\n";
    }
    return report->pass() ? kPass : kCheckFailed;
  } catch (const pacing::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << " (best residual " << e.best_residual()
              << ")\n";
    return kInternalError;
  } catch (const pacing::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const pacing::Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}
