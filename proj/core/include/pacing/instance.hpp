#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pacing/agents.hpp"
#include "pacing/matrix.hpp"

namespace pacing {

class Instance {
 public:
  Instance(std::vector<AgentType> agents, Matrix ctr);

  std::size_t num_agents() const noexcept { return agents_.size(); }
  std::size_t num_items() const noexcept { return ctr_.cols(); }
  const std::vector<AgentType>& agents() const noexcept { return agents_; }
  const AgentType& agent(std::size_t i) const { return agents_.at(i); }
  const Matrix& ctr() const noexcept { return ctr_; }

  // Items no agent has positive click-through rate on.
  std::vector<std::size_t> degenerate_items() const;

 private:
  std::vector<AgentType> agents_;
  Matrix ctr_;
};

// Single item, unit click-through rates.
Instance single_item_instance(std::vector<AgentType> agents);

// A declared (max bid per click, budget) pair.
struct Message {
  Message() = default;
  Message(ExtNonNeg max_bid, ExtNonNeg budget);

  ExtNonNeg max_bid;
  ExtNonNeg budget;

  friend bool operator==(const Message&, const Message&) = default;
  std::string to_string() const;
};

class MessageProfile {
 public:
  MessageProfile() = default;
  explicit MessageProfile(std::vector<Message> messages);

  std::size_t size() const noexcept { return messages_.size(); }
  const Message& operator[](std::size_t i) const { return messages_.at(i); }
  const std::vector<Message>& messages() const noexcept { return messages_; }

  MessageProfile with(std::size_t i, Message m) const;

  friend bool operator==(const MessageProfile&, const MessageProfile&) = default;

 private:
  std::vector<Message> messages_;
};

// Every agent reports its true linear value and budget.
MessageProfile truthful_profile(const Instance& instance);

}  // namespace pacing
