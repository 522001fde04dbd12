#pragma once

#include <vector>

#include "treespace/tree.hpp"

namespace treespace {

enum class DescriptorKind { typeI, typeII };

/// Basic clopen set U_t (type I) or U_t \ ∪_{s∈F} U_s (type II), where t is
/// `root` and F is given by steps from t to direct successors.
struct ClopenDescriptor {
  PointAddress root;
  std::vector<Step> excluded;

  DescriptorKind kind() const noexcept {
    return excluded.empty() ? DescriptorKind::typeI : DescriptorKind::typeII;
  }
  friend bool operator==(const ClopenDescriptor&, const ClopenDescriptor&) = default;
};

/// b lies in U_root and below none of the excluded successors.
bool member(const ClopenDescriptor& c, const PointAddress& b);

std::vector<Diagnostic> validate(const TreePresentation& p, const ClopenDescriptor& c);

std::string to_string(const ClopenDescriptor& c);

}  // namespace treespace
