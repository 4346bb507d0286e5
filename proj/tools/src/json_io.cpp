#include "pacing/cli/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <sstream>

namespace pacing::cli {
namespace {

std::string escape_token(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

// Forward iterator over the text that records how far the lexer has read.
struct TrackingIterator {
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  const char* p = nullptr;
  const char** high = nullptr;

  reference operator*() const { return *p; }
  TrackingIterator& operator++() {
    ++p;
    if (p > *high) *high = p;
    return *this;
  }
  TrackingIterator operator++(int) {
    TrackingIterator t = *this;
    ++*this;
    return t;
  }
  bool operator==(const TrackingIterator& o) const { return p == o.p; }
  bool operator!=(const TrackingIterator& o) const { return p != o.p; }
};

class LineIndex {
 public:
  explicit LineIndex(const std::string& text) {
    for (std::size_t k = 0; k < text.size(); ++k)
      if (text[k] == '\n') newlines_.push_back(k);
  }
  std::size_t line_at(std::size_t offset) const {
    return 1 + static_cast<std::size_t>(
                   std::lower_bound(newlines_.begin(), newlines_.end(), offset) - newlines_.begin());
  }
  std::size_t column_at(std::size_t offset) const {
    auto it = std::lower_bound(newlines_.begin(), newlines_.end(), offset);
    std::size_t start = it == newlines_.begin() ? 0 : *(it - 1) + 1;
    return offset - start + 1;
  }

 private:
  std::vector<std::size_t> newlines_;
};

// Records the starting line of every value, keyed by JSON pointer.
class LineSax {
 public:
  LineSax(const char* begin, const char* const* high, const LineIndex& index,
          std::map<std::string, std::size_t>& lines)
      : begin_(begin), high_(high), index_(index), lines_(lines) {}

  bool null() { return value(); }
  bool boolean(bool) { return value(); }
  bool number_integer(Json::number_integer_t) { return value(); }
  bool number_unsigned(Json::number_unsigned_t) { return value(); }
  bool number_float(Json::number_float_t, const Json::string_t&) { return value(); }
  bool string(Json::string_t&) { return value(); }
  bool binary(Json::binary_t&) { return value(); }
  bool start_object(std::size_t) { return open(false); }
  bool start_array(std::size_t) { return open(true); }
  bool end_object() { return close(); }
  bool end_array() { return close(); }
  bool key(Json::string_t& k) {
    stack_.back().key = k;
    lines_.emplace(child(), line_now());
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) {
    return false;
  }

 private:
  struct Frame {
    bool array = false;
    std::size_t index = 0;
    std::string key;
    std::string path;
  };

  std::size_t line_now() const {
    std::size_t consumed = static_cast<std::size_t>(*high_ - begin_);
    return index_.line_at(consumed == 0 ? 0 : consumed - 1);
  }
  std::string child() const {
    if (stack_.empty()) return "";
    const Frame& f = stack_.back();
    return f.path + "/" + (f.array ? std::to_string(f.index) : escape_token(f.key));
  }
  void step() {
    if (!stack_.empty() && stack_.back().array) ++stack_.back().index;
  }
  bool value() {
    lines_.emplace(child(), line_now());
    step();
    return true;
  }
  bool open(bool array) {
    std::string path = child();
    lines_.emplace(path, line_now());
    stack_.push_back({array, 0, "", path});
    return true;
  }
  bool close() {
    stack_.pop_back();
    step();
    return true;
  }

  const char* begin_;
  const char* const* high_;
  const LineIndex& index_;
  std::map<std::string, std::size_t>& lines_;
  std::vector<Frame> stack_;
};

// Read-only view of a document node that knows its own JSON pointer.
class Node {
 public:
  Node(const Document& doc, const Json& j, std::string ptr)
      : doc_(doc), j_(j), ptr_(std::move(ptr)) {}

  const Json& json() const { return j_; }
  const std::string& pointer() const { return ptr_; }
  [[noreturn]] void fail(const std::string& what) const { doc_.fail(ptr_, what); }

  void expect_object(std::initializer_list<const char*> allowed) const {
    if (!j_.is_object()) fail("expected an object");
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || it.key() == a;
      if (!ok) Node(doc_, it.value(), child_ptr(it.key())).fail("unknown field '" + it.key() + "'");
    }
  }
  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }
  Node at(const std::string& key) const {
    if (!j_.is_object()) fail("expected an object");
    if (!j_.contains(key)) fail("missing required field '" + key + "'");
    return Node(doc_, j_.at(key), child_ptr(key));
  }
  std::size_t size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }
  Node at(std::size_t i) const { return Node(doc_, j_.at(i), ptr_ + "/" + std::to_string(i)); }

  double number() const {
    if (!j_.is_number()) fail("expected a number");
    double x = j_.get<double>();
    if (!std::isfinite(x)) fail("number is not a finite double");
    return x;
  }
  double nonneg() const {
    double x = number();
    if (x < 0.0) fail("expected a non-negative number");
    return x;
  }
  ExtNonNeg ext() const {
    if (j_.is_string()) {
      if (j_.get<std::string>() != "inf") fail("the only accepted string here is \"inf\"");
      return ExtNonNeg::infinity();
    }
    return ExtNonNeg(nonneg());
  }
  std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  std::vector<Breakpoint> points() const {
    std::vector<Breakpoint> pts;
    for (std::size_t k = 0; k < size(); ++k) {
      Node p = at(k);
      if (p.size() != 2) p.fail("a breakpoint is a [x, y] pair");
      pts.push_back({p.at(std::size_t{0}).number(), p.at(std::size_t{1}).number()});
    }
    return pts;
  }

 private:
  std::string child_ptr(const std::string& key) const { return ptr_ + "/" + escape_token(key); }

  const Document& doc_;
  const Json& j_;
  std::string ptr_;
};

// Runs a library constructor and attaches the node's location to its errors.
template <typename F>
auto located(const Node& node, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    node.fail(e.what());
  }
}

Valuation parse_valuation(const Node& n) {
  const std::string kind = n.at("kind").string();
  if (kind == "linear") {
    n.expect_object({"kind", "value"});
    return located(n, [&] { return Valuation::linear(n.at("value").number()); });
  }
  if (kind == "power") {
    n.expect_object({"kind", "scale", "exponent"});
    return located(n, [&] {
      return Valuation::power(n.at("scale").number(), n.at("exponent").number());
    });
  }
  if (kind == "pwl_concave") {
    n.expect_object({"kind", "points"});
    return located(n, [&] { return Valuation::piecewise_linear(n.at("points").points()); });
  }
  n.at("kind").fail("unknown valuation kind '" + kind + "' (expected linear, power, pwl_concave)");
}

MoneyCost parse_money_cost(const Node& n) {
  const std::string kind = n.at("kind").string();
  if (kind == "identity") {
    n.expect_object({"kind"});
    return MoneyCost::identity();
  }
  if (kind == "power") {
    n.expect_object({"kind", "scale", "exponent"});
    return located(n, [&] {
      return MoneyCost::power(n.at("scale").number(), n.at("exponent").number());
    });
  }
  if (kind == "pwl_convex") {
    n.expect_object({"kind", "points"});
    return located(n, [&] { return MoneyCost::piecewise_linear(n.at("points").points()); });
  }
  n.at("kind").fail("unknown money_cost kind '" + kind + "' (expected identity, power, pwl_convex)");
}

Json points_to_json(const std::vector<Breakpoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(Json::array({p.x, p.y}));
  return a;
}

Json valuation_to_json(const Valuation& v) {
  switch (v.kind()) {
    case Valuation::Kind::Linear:
      return Json{{"kind", "linear"}, {"value", v.linear_value()}};
    case Valuation::Kind::Power:
      return Json{{"kind", "power"}, {"scale", v.scale()}, {"exponent", v.exponent()}};
    case Valuation::Kind::PiecewiseLinearConcave:
      return Json{{"kind", "pwl_concave"}, {"points", points_to_json(v.pieces().points())}};
  }
  throw InternalError("unknown valuation kind");
}

Json money_cost_to_json(const MoneyCost& c) {
  switch (c.kind()) {
    case MoneyCost::Kind::Identity:
      return Json{{"kind", "identity"}};
    case MoneyCost::Kind::Power:
      return Json{{"kind", "power"}, {"scale", c.scale()}, {"exponent", c.exponent()}};
    case MoneyCost::Kind::PiecewiseLinearConvex:
      return Json{{"kind", "pwl_convex"}, {"points", points_to_json(c.pieces().points())}};
  }
  throw InternalError("unknown money cost kind");
}

Matrix parse_rows(const Node& n, const char* what) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < n.size(); ++i) {
    Node r = n.at(i);
    std::vector<double> row;
    for (std::size_t j = 0; j < r.size(); ++j) row.push_back(r.at(j).nonneg());
    if (!rows.empty() && row.size() != rows.front().size()) {
      r.fail(std::string(what) + " rows must all have the same length");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty()) n.fail(std::string(what) + " must be non-empty");
  return Matrix::from_rows(rows);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

SchemaError::SchemaError(const std::string& source, std::size_t line, const std::string& pointer,
                         const std::string& what)
    : InputError(source + ":" + std::to_string(line) + ": " +
                 (pointer.empty() ? std::string("document root") : "field " + pointer) + ": " +
                 what),
      line_(line),
      pointer_(pointer) {}

std::size_t Document::line_of(const std::string& pointer) const {
  auto it = lines.find(pointer);
  return it == lines.end() ? 1 : it->second;
}

void Document::fail(const std::string& pointer, const std::string& what) const {
  throw SchemaError(source, line_of(pointer), pointer, what);
}

Document parse_document(const std::string& text, const std::string& source) {
  Document doc;
  doc.source = source;
  LineIndex index(text);
  try {
    doc.root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
    std::string msg = e.what();
    // Drop the library's own "[json.exception.parse_error.101] parse error at line L, column C: ".
    auto colon = msg.find(": ");
    if (colon != std::string::npos) msg = msg.substr(colon + 2);
    throw SchemaError(source, index.line_at(at), "",
                      "column " + std::to_string(index.column_at(at)) + ": " + msg);
  }
  const char* begin = text.data();
  const char* high = begin;
  TrackingIterator first{begin, &high}, last{begin + text.size(), &high};
  LineSax sax(begin, &high, index, doc.lines);
  Json::sax_parse(first, last, &sax);
  return doc;
}

InstanceFile parse_instance(const std::string& text, const std::string& source) {
  Document doc = parse_document(text, source);
  Node root(doc, doc.root, "");
  root.expect_object({"agents", "ctr", "seed"});
  Node agents = root.at("agents");
  std::vector<AgentType> types;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    Node a = agents.at(i);
    a.expect_object({"valuation", "money_cost", "budget"});
    Valuation v = parse_valuation(a.at("valuation"));
    MoneyCost c = a.has("money_cost") ? parse_money_cost(a.at("money_cost")) : MoneyCost::identity();
    ExtNonNeg w = a.at("budget").ext();
    types.push_back(located(a, [&] { return AgentType(v, c, w); }));
  }
  if (types.empty()) agents.fail("at least one agent is required");
  Node ctr_node = root.at("ctr");
  Matrix ctr = parse_rows(ctr_node, "ctr");
  if (ctr.rows() != types.size()) {
    ctr_node.fail("ctr has " + std::to_string(ctr.rows()) + " rows for " +
                  std::to_string(types.size()) + " agents");
  }
  InstanceFile out{located(root, [&] { return Instance(std::move(types), std::move(ctr)); }),
                   std::nullopt};
  if (root.has("seed")) {
    Node s = root.at("seed");
    if (!s.json().is_number_unsigned()) s.fail("seed must be a non-negative integer");
    out.seed = s.json().get<std::uint64_t>();
  }
  return out;
}

InstanceFile load_instance(const std::string& path) { return parse_instance(slurp(path), path); }

Json instance_to_json(const Instance& instance, std::optional<std::uint64_t> seed) {
  Json agents = Json::array();
  for (const auto& a : instance.agents()) {
    agents.push_back(Json{{"valuation", valuation_to_json(a.valuation)},
                          {"money_cost", money_cost_to_json(a.money_cost)},
                          {"budget", ext_to_json(a.budget)}});
  }
  Json j{{"agents", agents}, {"ctr", matrix_to_json(instance.ctr())}};
  if (seed) j["seed"] = *seed;
  return j;
}

MessageProfile parse_profile(const std::string& text, const std::string& source) {
  Document doc = parse_document(text, source);
  Node root(doc, doc.root, "");
  root.expect_object({"messages"});
  Node ms = root.at("messages");
  std::vector<Message> out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    Node m = ms.at(i);
    m.expect_object({"max_bid", "budget"});
    ExtNonNeg v = m.at("max_bid").ext(), w = m.at("budget").ext();
    out.push_back(located(m, [&] { return Message(v, w); }));
  }
  if (out.empty()) ms.fail("at least one message is required");
  return MessageProfile(std::move(out));
}

Json profile_to_json(const MessageProfile& profile) {
  Json ms = Json::array();
  for (const auto& m : profile.messages()) ms.push_back(message_to_json(m));
  return Json{{"messages", ms}};
}

Matrix parse_allocation(const std::string& text, const std::string& source) {
  Document doc = parse_document(text, source);
  Node root(doc, doc.root, "");
  if (root.json().is_object()) {
    root.expect_object({"allocation"});
    return parse_rows(root.at("allocation"), "allocation");
  }
  return parse_rows(root, "allocation");
}

TextSource read_inline_or_file(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    return {arg, "<inline>"};
  }
  return {slurp(arg), arg};
}

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json ext_to_json(const ExtNonNeg& x) { return number(x.as_double()); }

Json message_to_json(const Message& m) {
  return Json{{"max_bid", ext_to_json(m.max_bid)}, {"budget", ext_to_json(m.budget)}};
}

Json vector_to_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(number(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

Json outcome_to_json(const FppeOutcome& out) {
  const auto& r = out.residuals;
  return Json{{"method", to_string(out.method)},
              {"prices", vector_to_json(out.prices)},
              {"allocation", matrix_to_json(out.allocation)},
              {"payments", vector_to_json(out.payments)},
              {"multipliers", vector_to_json(out.multipliers)},
              {"revenue", number(out.revenue())},
              {"iterations", out.iterations},
              {"residuals",
               Json{{"bang_per_buck", number(r.bang_per_buck)},
                    {"supply", number(r.supply)},
                    {"payment", number(r.payment)},
                    {"budget", number(r.budget)},
                    {"multiplier", number(r.multiplier)},
                    {"max_relative", number(r.max_relative())}}}};
}

Json welfare_to_json(const WelfareResult& w) {
  return Json{{"total", number(w.total)},
              {"per_agent_wtp", vector_to_json(w.per_agent_wtp)},
              {"allocation", matrix_to_json(w.allocation)},
              {"gap", number(w.gap)}};
}

Json equilibrium_report_to_json(const EquilibriumReport& r) {
  Json j{{"is_eps_nash", r.is_eps_nash},
         {"eps", number(r.eps)},
         {"method", to_string(r.method)},
         {"gain", number(r.gain)},
         {"worst_agent", r.worst_agent},
         {"worst_deviation", message_to_json(r.worst_deviation)},
         {"agent_gains", vector_to_json(r.agent_gains)},
         {"agent_utilities", vector_to_json(r.agent_utilities)}};
  if (r.method == NashMethod::GridSweep) {
    j["grid"] = Json{{"points", r.grid_points}, {"upper", number(r.grid_upper)}};
  }
  return j;
}

Json interval_to_json(const PriceInterval& p) {
  if (p.empty) return Json{{"empty", true}};
  return Json{{"empty", false},
              {"lo", number(p.lo)},
              {"hi", number(p.hi)},
              {"lo_open", p.lo_open},
              {"hi_open", p.hi_open}};
}

Json tolerances_to_json(const Tolerances& t) {
  return Json{{"numeric", t.numeric},
              {"fppe", t.fppe},
              {"fppe_exact", t.fppe_exact},
              {"nash_single_item", t.nash_single_item},
              {"nash_grid", t.nash_grid},
              {"golden_section", t.golden_section},
              {"bisection", t.bisection}};
}

}  // namespace pacing::cli
