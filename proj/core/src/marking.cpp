#include "treespace/marking.hpp"

#include <algorithm>

namespace treespace {

bool TemplateMarking::is_empty() const noexcept {
  return std::none_of(marked_.begin(), marked_.end(), [](bool b) { return b; });
}

std::size_t TemplateMarking::marked_count() const noexcept {
  return static_cast<std::size_t>(std::count(marked_.begin(), marked_.end(), true));
}

bool TemplateMarking::subset_of(const TemplateMarking& other) const {
  if (other.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (marked_[i] && !other.marked_[i]) return false;
  }
  return true;
}

std::vector<bool> marked_below(const TreePresentation& p, const TemplateMarking& f) {
  std::vector<bool> below(p.size(), false);
  for (NodeId id = p.size(); id-- > 0;) {
    bool any = f[id];
    for (NodeId c : p[id].children) any = any || below[c];
    below[id] = any;
  }
  return below;
}

bool is_closed(const TreePresentation& p, const TemplateMarking& f) {
  if (f.size() != p.size()) return false;
  const auto below = marked_below(p, f);
  for (NodeId id = 0; id < p.size(); ++id) {
    for (NodeId c : p[id].children) {
      if (p[c].multiplicity.is_omega() && below[c] && !f[id]) return false;
    }
  }
  return true;
}

bool contains(const TreePresentation& p, const TemplateMarking& f, const PointAddress& b) {
  return f[template_of(p, b)];
}

std::optional<Natural> point_count(const TreePresentation& p, const TemplateMarking& f) {
  Natural total = 0;
  for (NodeId id = 0; id < p.size(); ++id) {
    if (!f[id]) continue;
    Natural copies = 1;
    for (NodeId cur = id; p[cur].parent != kNoNode; cur = p[cur].parent) {
      if (p[cur].multiplicity.is_omega()) return std::nullopt;
      copies *= static_cast<unsigned long>(p[cur].multiplicity.count());
    }
    total += copies;
  }
  return total;
}

std::string to_string(const TreePresentation& p, const TemplateMarking& f) {
  std::string out = "{";
  bool first = true;
  for (NodeId id = 0; id < p.size(); ++id) {
    if (!f[id]) continue;
    if (!first) out += ", ";
    out += template_label(p, id);
    first = false;
  }
  return out + "}";
}

}  // namespace treespace
