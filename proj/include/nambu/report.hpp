#pragma once

#include <string>

namespace nambu {

// Outcome of one named identity check. `residual` is the canonical rendering
// of whatever should vanish ("0" when the identity holds exactly), or a
// numeric magnitude for sampled checks.
struct CheckResult {
  std::string id;
  std::string description;
  bool passed = false;
  std::string residual;
  std::string detail;  // optional extra finding, e.g. a derived sign
};

}  // namespace nambu
