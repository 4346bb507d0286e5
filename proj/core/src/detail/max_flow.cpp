#include "detail/max_flow.hpp"

#include <algorithm>
#include <limits>

namespace pacing::detail {

namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}

DenseMaxFlow::DenseMaxFlow(std::size_t nodes)
    : n_(nodes), cap_(nodes * nodes, 0.0), flow_(nodes * nodes, 0.0), parent_(nodes), queue_() {
  queue_.reserve(nodes);
}

void DenseMaxFlow::set_capacity(std::size_t u, std::size_t v, double c) { cap_[u * n_ + v] = c; }

double DenseMaxFlow::augment(std::size_t s, std::size_t t, double eps) {
  while (true) {
    std::fill(parent_.begin(), parent_.end(), kNone);
    parent_[s] = s;
    queue_.clear();
    queue_.push_back(s);
    for (std::size_t head = 0; head < queue_.size() && parent_[t] == kNone; ++head) {
      std::size_t u = queue_[head];
      for (std::size_t v = 0; v < n_; ++v) {
        if (parent_[v] != kNone) continue;
        // Residual capacity combines forward slack and cancellable reverse flow.
        double r = residual(u, v) + flow_[v * n_ + u];
        if (r > eps) {
          parent_[v] = u;
          queue_.push_back(v);
        }
      }
    }
    if (parent_[t] == kNone) break;
    double bottleneck = std::numeric_limits<double>::infinity();
    for (std::size_t v = t; v != s; v = parent_[v]) {
      std::size_t u = parent_[v];
      bottleneck = std::min(bottleneck, residual(u, v) + flow_[v * n_ + u]);
    }
    for (std::size_t v = t; v != s; v = parent_[v]) {
      std::size_t u = parent_[v];
      double cancel = std::min(bottleneck, flow_[v * n_ + u]);
      flow_[v * n_ + u] -= cancel;
      flow_[u * n_ + v] += bottleneck - cancel;
    }
  }
  double total = 0.0;
  for (std::size_t v = 0; v < n_; ++v) total += flow_[s * n_ + v] - flow_[v * n_ + s];
  return total;
}

}  // namespace pacing::detail
