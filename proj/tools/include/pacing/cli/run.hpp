#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pacing/cli/report.hpp"

namespace pacing::cli {

struct RunOptions {
  std::map<std::string, std::string> params;  // scenario parameters, key=value
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::optional<double> eps;
  std::string space = "full";
  std::size_t grid = 2000;
  std::optional<std::string> profile;  // inline JSON or path
  std::optional<std::string> alloc;    // inline JSON or path
  std::size_t agent = 0;
};

struct ScenarioParam {
  std::string name;
  std::string default_value;
  std::string help;
};

struct ScenarioInfo {
  std::string name;
  std::string summary;
  std::vector<ScenarioParam> params;
};

const std::vector<ScenarioInfo>& scenario_registry();

Report run_scenario(const std::string& name, const RunOptions& options);

// Subcommands operating on an instance file: fppe, best-response, verify-nash,
// solve-nash, welfare, poa.
const std::vector<std::string>& file_commands();
Report run_file(const std::string& command, const std::string& instance_path,
                const RunOptions& options);
Report run_on_instance(const std::string& command, const InstanceFile& file,
                       const RunOptions& options);

}  // namespace pacing::cli
