#ifndef EDGESAMPLE_FORMAT_HPP
#define EDGESAMPLE_FORMAT_HPP

#include <charconv>
#include <cmath>
#include <string>

namespace edgesample {

// Shortest decimal representation that round-trips; stable output for CSVs.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

}  // namespace edgesample

#endif  // EDGESAMPLE_FORMAT_HPP
