#pragma once

#include <cstddef>
#include <functional>

namespace pacing {

// Runs body(k) for k in [0, count) on up to `jobs` threads. The first exception
// thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& body);

}  // namespace pacing
