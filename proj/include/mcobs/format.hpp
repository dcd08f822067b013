#pragma once

#include <charconv>
#include <string>

namespace mcobs {

/// Shortest round-trip decimal form; never locale dependent.
inline std::string format_number(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

/// m = twice_m / 2 as an exact decimal ("-3/2" -> "-1.5").
inline std::string format_half(int twice_m) {
  std::string s = std::to_string(twice_m / 2);
  if (twice_m % 2 != 0) {
    if (twice_m < 0 && twice_m / 2 == 0) s = "-0";
    s += ".5";
  }
  return s;
}

}  // namespace mcobs
