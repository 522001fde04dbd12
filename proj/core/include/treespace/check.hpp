#pragma once

#include <string>
#include <vector>

namespace treespace {

/// Outcome of one named verification.
struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

inline bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

}  // namespace treespace
