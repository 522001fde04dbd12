#include "treespace/clopen.hpp"

#include <algorithm>

namespace treespace {

bool member(const ClopenDescriptor& c, const PointAddress& b) {
  if (!b.extends(c.root)) return false;
  if (b.steps.size() == c.root.steps.size()) return true;
  const Step& next = b.steps[c.root.steps.size()];
  return std::find(c.excluded.begin(), c.excluded.end(), next) == c.excluded.end();
}

std::vector<Diagnostic> validate(const TreePresentation& p, const ClopenDescriptor& c) {
  std::vector<Diagnostic> out;
  if (!is_valid_address(p, c.root)) {
    out.push_back({to_string(c.root), "descriptor root is not a node"});
    return out;
  }
  for (std::size_t i = 0; i < c.excluded.size(); ++i) {
    if (!is_valid_address(p, c.root.child(c.excluded[i].group, c.excluded[i].copy))) {
      out.push_back({to_string(c.root), "excluded step is not a direct successor"});
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (c.excluded[i] == c.excluded[j]) out.push_back({to_string(c.root), "duplicate excluded successor"});
    }
  }
  return out;
}

std::string to_string(const ClopenDescriptor& c) {
  std::string out = "U(" + to_string(c.root) + ")";
  if (!c.excluded.empty()) {
    out += "\\{";
    for (std::size_t i = 0; i < c.excluded.size(); ++i) {
      if (i > 0) out += ",";
      out += std::to_string(c.excluded[i].group) + ":" + std::to_string(c.excluded[i].copy);
    }
    out += "}";
  }
  return out;
}

}  // namespace treespace
