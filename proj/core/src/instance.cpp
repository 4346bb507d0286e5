#include "pacing/instance.hpp"

#include <cmath>

namespace pacing {

Instance::Instance(std::vector<AgentType> agents, Matrix ctr)
    : agents_(std::move(agents)), ctr_(std::move(ctr)) {
  if (agents_.empty()) throw InputError("instance needs at least one agent");
  if (ctr_.rows() != agents_.size()) {
    throw InputError("ctr has " + std::to_string(ctr_.rows()) + " rows for " +
                     std::to_string(agents_.size()) + " agents");
  }
  if (ctr_.cols() == 0) throw InputError("instance needs at least one item");
  for (std::size_t i = 0; i < ctr_.rows(); ++i) {
    for (std::size_t j = 0; j < ctr_.cols(); ++j) {
      double c = ctr_(i, j);
      if (!std::isfinite(c) || c < 0.0) {
        throw InputError("ctr[" + std::to_string(i) + "][" + std::to_string(j) +
                         "] must be finite and non-negative");
      }
    }
  }
}

std::vector<std::size_t> Instance::degenerate_items() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < ctr_.cols(); ++j) {
    bool any = false;
    for (std::size_t i = 0; i < ctr_.rows(); ++i) any = any || ctr_(i, j) > 0.0;
    if (!any) out.push_back(j);
  }
  return out;
}

Instance single_item_instance(std::vector<AgentType> agents) {
  Matrix ctr(agents.size(), 1, 1.0);
  return Instance(std::move(agents), std::move(ctr));
}

Message::Message(ExtNonNeg max_bid_, ExtNonNeg budget_) : max_bid(max_bid_), budget(budget_) {
  if (max_bid.is_infinite() && budget.is_infinite()) {
    throw InputError("a message cannot have both max bid and budget infinite");
  }
}

std::string Message::to_string() const {
  return "(" + max_bid.to_string() + ", " + budget.to_string() + ")";
}

MessageProfile::MessageProfile(std::vector<Message> messages) : messages_(std::move(messages)) {
  for (const auto& m : messages_) {
    if (m.max_bid.is_infinite() && m.budget.is_infinite()) {
      throw InputError("a message cannot have both max bid and budget infinite");
    }
  }
}

MessageProfile MessageProfile::with(std::size_t i, Message m) const {
  auto copy = messages_;
  copy.at(i) = m;
  return MessageProfile(std::move(copy));
}

MessageProfile truthful_profile(const Instance& instance) {
  std::vector<Message> ms;
  for (const auto& a : instance.agents()) {
    if (a.valuation.kind() != Valuation::Kind::Linear) {
      throw UnsupportedError("truthful profile needs linear valuations");
    }
    ms.emplace_back(ExtNonNeg(a.valuation.linear_value()), a.budget);
  }
  return MessageProfile(std::move(ms));
}

}  // namespace pacing
