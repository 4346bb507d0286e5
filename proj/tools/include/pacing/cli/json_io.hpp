#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "pacing/errors.hpp"
#include "pacing/fppe.hpp"
#include "pacing/instance.hpp"
#include "pacing/matrix.hpp"
#include "pacing/metagame.hpp"
#include "pacing/tolerances.hpp"
#include "pacing/welfare.hpp"

namespace pacing::cli {

using Json = nlohmann::ordered_json;

// Malformed JSON or a schema violation; the message names the source, line and field.
class SchemaError : public InputError {
 public:
  SchemaError(const std::string& source, std::size_t line, const std::string& pointer,
              const std::string& what);
  std::size_t line() const noexcept { return line_; }
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::size_t line_;
  std::string pointer_;
};

// A parsed document plus the line each JSON pointer starts on.
struct Document {
  Json root;
  std::string source;
  std::map<std::string, std::size_t> lines;

  std::size_t line_of(const std::string& pointer) const;
  [[noreturn]] void fail(const std::string& pointer, const std::string& what) const;
};

Document parse_document(const std::string& text, const std::string& source);

struct InstanceFile {
  Instance instance;
  std::optional<std::uint64_t> seed;
};

InstanceFile parse_instance(const std::string& text, const std::string& source = "<instance>");
InstanceFile load_instance(const std::string& path);
Json instance_to_json(const Instance& instance, std::optional<std::uint64_t> seed = std::nullopt);

// {"messages": [{"max_bid": x|"inf", "budget": x|"inf"}, ...]}
MessageProfile parse_profile(const std::string& text, const std::string& source = "<profile>");
Json profile_to_json(const MessageProfile& profile);

// {"allocation": [[...], ...]} or the bare row array.
Matrix parse_allocation(const std::string& text, const std::string& source = "<allocation>");

// An argument that is either inline JSON or a path to a JSON file.
struct TextSource {
  std::string text;
  std::string name;
};
TextSource read_inline_or_file(const std::string& arg);

Json number(double x);  // +-inf as "inf"/"-inf", NaN as "nan"
Json ext_to_json(const ExtNonNeg& x);
Json message_to_json(const Message& m);
Json matrix_to_json(const Matrix& m);
Json vector_to_json(const std::vector<double>& v);
Json outcome_to_json(const FppeOutcome& out);
Json welfare_to_json(const WelfareResult& w);
Json equilibrium_report_to_json(const EquilibriumReport& r);
Json interval_to_json(const PriceInterval& p);
Json tolerances_to_json(const Tolerances& t);

}  // namespace pacing::cli
