#include "pacing/ext_real.hpp"

#include <charconv>

namespace pacing {

std::string ExtNonNeg::to_string() const {
  if (infinite_) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value_);
  return std::string(buf, res.ptr);
}

}  // namespace pacing
