#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pacing/cli/json_io.hpp"

namespace pacing::cli {

enum class Relation { Near, AtMost, AtLeast, Holds };

// One compared quantity. `provenance` says where the expected value comes from:
// closed_form, worked_example, oracle, property or regression.
struct Check {
  std::string name;
  Relation relation = Relation::Near;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string provenance;
  bool pass = false;
};

class Report {
 public:
  explicit Report(std::string id) : id_(std::move(id)) {}

  const std::string& id() const { return id_; }
  Json& inputs() { return inputs_; }
  Json& computed() { return computed_; }
  const Json& inputs() const { return inputs_; }
  const Json& computed() const { return computed_; }

  // |computed - expected| <= tol
  bool near(const std::string& name, double computed, double expected, double tol,
            const std::string& provenance);
  // computed <= bound + tol
  bool at_most(const std::string& name, double computed, double bound, double tol,
               const std::string& provenance);
  // computed >= bound - tol
  bool at_least(const std::string& name, double computed, double bound, double tol,
                const std::string& provenance);
  bool holds(const std::string& name, bool ok, const std::string& provenance);

  const std::vector<Check>& checks() const { return checks_; }
  bool pass() const;

  // One CSV row per instance for sweep scenarios.
  void add_row(Json row) { rows_.push_back(std::move(row)); }
  const std::vector<Json>& rows() const { return rows_; }

  void set_wall_clock(double seconds) { wall_clock_ = seconds; }
  void set_tolerances(const Tolerances& t) { tolerances_ = t; }

  Json to_json() const;
  std::string to_text() const;
  std::string to_csv() const;
  std::string render(const std::string& format) const;

 private:
  std::string id_;
  Json inputs_ = Json::object();
  Json computed_ = Json::object();
  std::vector<Check> checks_;
  std::vector<Json> rows_;
  std::optional<double> wall_clock_;
  Tolerances tolerances_ = default_tolerances();
};

std::string to_string(Relation r);

}  // namespace pacing::cli
