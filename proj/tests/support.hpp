#pragma once

#include <string>
#include <vector>

#include "nambu/polynomial.hpp"

namespace nambu::testing {

inline const std::vector<std::string>& xyz() {
  static const std::vector<std::string> names{"x", "y", "z"};
  return names;
}

inline Polynomial P(const std::string& text,
                    const std::vector<std::string>& names = xyz()) {
  return parse_polynomial(text, names);
}

inline std::vector<std::string> xs(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

}  // namespace nambu::testing
