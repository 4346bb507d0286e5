#pragma once

#include <cstddef>
#include <vector>

namespace pacing::detail {

// Edmonds-Karp on a dense capacity matrix; sized for graphs of a few dozen nodes.
class DenseMaxFlow {
 public:
  explicit DenseMaxFlow(std::size_t nodes);

  void set_capacity(std::size_t u, std::size_t v, double c);
  double capacity(std::size_t u, std::size_t v) const { return cap_[u * n_ + v]; }
  double flow(std::size_t u, std::size_t v) const { return flow_[u * n_ + v]; }

  // Augments from the current flow; returns the total flow out of s.
  // Paths with bottleneck at most `eps` are ignored.
  double augment(std::size_t s, std::size_t t, double eps);

 private:
  double residual(std::size_t u, std::size_t v) const {
    return cap_[u * n_ + v] - flow_[u * n_ + v];
  }

  std::size_t n_;
  std::vector<double> cap_;
  std::vector<double> flow_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> queue_;
};

}  // namespace pacing::detail
