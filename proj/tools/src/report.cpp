#include "pacing/cli/report.hpp"

#include <cmath>
#include <sstream>

namespace pacing::cli {
namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream ss;
  ss.precision(12);
  ss << x;
  return ss.str();
}

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt(v.get<double>());
  return v.dump();
}

std::string csv_cell(const Json& v) {
  std::string s = scalar(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void text_fields(std::ostringstream& out, const Json& obj, const std::string& indent) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (it.value().is_object()) {
      out << indent << it.key() << ":\n";
      text_fields(out, it.value(), indent + "  ");
    } else {
      out << indent << it.key() << ": " << scalar(it.value()) << "\n";
    }
  }
}

}  // namespace

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Near: return "near";
    case Relation::AtMost: return "at_most";
    case Relation::AtLeast: return "at_least";
    case Relation::Holds: return "holds";
  }
  return "unknown";
}

bool Report::near(const std::string& name, double computed, double expected, double tol,
                  const std::string& provenance) {
  bool ok = std::abs(computed - expected) <= tol;
  checks_.push_back({name, Relation::Near, computed, expected, tol, provenance, ok});
  return ok;
}

bool Report::at_most(const std::string& name, double computed, double bound, double tol,
                     const std::string& provenance) {
  bool ok = computed <= bound + tol;
  checks_.push_back({name, Relation::AtMost, computed, bound, tol, provenance, ok});
  return ok;
}

bool Report::at_least(const std::string& name, double computed, double bound, double tol,
                      const std::string& provenance) {
  bool ok = computed >= bound - tol;
  checks_.push_back({name, Relation::AtLeast, computed, bound, tol, provenance, ok});
  return ok;
}

bool Report::holds(const std::string& name, bool ok, const std::string& provenance) {
  checks_.push_back({name, Relation::Holds, ok ? 1.0 : 0.0, 1.0, 0.0, provenance, ok});
  return ok;
}

bool Report::pass() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

Json Report::to_json() const {
  Json checks = Json::array();
  for (const auto& c : checks_) {
    checks.push_back(Json{{"name", c.name},
                          {"relation", to_string(c.relation)},
                          {"computed", number(c.computed)},
                          {"expected", number(c.expected)},
                          {"tolerance", number(c.tolerance)},
                          {"provenance", c.provenance},
                          {"pass", c.pass}});
  }
  Json j{{"id", id_},
         {"pass", pass()},
         {"inputs", inputs_},
         {"computed", computed_},
         {"checks", checks},
         {"tolerances", tolerances_to_json(tolerances_)}};
  if (!rows_.empty()) j["rows"] = rows_;
  if (wall_clock_) j["wall_clock_s"] = *wall_clock_;
  return j;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << id_ << ": " << (pass() ? "PASS" : "FAIL") << "\n";
  if (!inputs_.empty()) {
    out << "inputs:\n";
    text_fields(out, inputs_, "  ");
  }
  if (!computed_.empty()) {
    out << "computed:\n";
    text_fields(out, computed_, "  ");
  }
  if (!rows_.empty()) out << "rows: " << rows_.size() << " (use --format csv)\n";
  for (const auto& c : checks_) {
    out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << ": " << fmt(c.computed);
    switch (c.relation) {
      case Relation::Near:
        out << " vs " << fmt(c.expected) << " (tol " << fmt(c.tolerance) << ")";
        break;
      case Relation::AtMost:
        out << " <= " << fmt(c.expected) << " (tol " << fmt(c.tolerance) << ")";
        break;
      case Relation::AtLeast:
        out << " >= " << fmt(c.expected) << " (tol " << fmt(c.tolerance) << ")";
        break;
      case Relation::Holds:
        break;
    }
    out << " [" << c.provenance << "]\n";
  }
  if (wall_clock_) out << "wall clock: " << fmt(*wall_clock_) << " s\n";
  return out.str();
}

std::string Report::to_csv() const {
  std::ostringstream out;
  if (!rows_.empty()) {
    const Json& head = rows_.front();
    bool first = true;
    for (auto it = head.begin(); it != head.end(); ++it) {
      out << (first ? "" : ",") << csv_cell(it.key());
      first = false;
    }
    out << "\n";
    for (const auto& row : rows_) {
      first = true;
      for (auto it = head.begin(); it != head.end(); ++it) {
        out << (first ? "" : ",") << (row.contains(it.key()) ? csv_cell(row.at(it.key())) : "");
        first = false;
      }
      out << "\n";
    }
    return out.str();
  }
  out << "check,relation,computed,expected,tolerance,provenance,pass\n";
  for (const auto& c : checks_) {
    out << csv_cell(c.name) << "," << to_string(c.relation) << "," << fmt(c.computed) << ","
        << fmt(c.expected) << "," << fmt(c.tolerance) << "," << c.provenance << ","
        << (c.pass ? "true" : "false") << "\n";
  }
  return out.str();
}

std::string Report::render(const std::string& format) const {
  if (format == "json") return to_json().dump(2) + "\n";
  if (format == "text") return to_text();
  if (format == "csv") return to_csv();
  throw InputError("unknown format '" + format + "' (expected json, csv, text)");
}

}  // namespace pacing::cli
