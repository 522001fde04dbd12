#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treespace/rational.hpp"
#include "treespace/tree.hpp"

namespace treespace {

/// Copy-uniform subset of [T]: the branches whose terminal node
/// instantiates a marked template.
class TemplateMarking {
 public:
  TemplateMarking() = default;
  explicit TemplateMarking(std::vector<bool> marked) : marked_(std::move(marked)) {}

  static TemplateMarking full(const TreePresentation& p) { return TemplateMarking(std::vector<bool>(p.size(), true)); }
  static TemplateMarking none(const TreePresentation& p) { return TemplateMarking(std::vector<bool>(p.size(), false)); }

  bool operator[](NodeId id) const { return marked_.at(id); }
  void set(NodeId id, bool value) { marked_.at(id) = value; }
  std::size_t size() const noexcept { return marked_.size(); }
  bool is_empty() const noexcept;
  std::size_t marked_count() const noexcept;
  bool subset_of(const TemplateMarking& other) const;
  const std::vector<bool>& bits() const noexcept { return marked_; }

  friend bool operator==(const TemplateMarking&, const TemplateMarking&) = default;

 private:
  std::vector<bool> marked_;
};

/// Closed in the tree topology: a mark anywhere inside an ω-group's subtree
/// forces a mark on the group's parent.
bool is_closed(const TreePresentation& p, const TemplateMarking& f);

/// For each template: does its subtree (inclusive) contain a mark.
std::vector<bool> marked_below(const TreePresentation& p, const TemplateMarking& f);

bool contains(const TreePresentation& p, const TemplateMarking& f, const PointAddress& b);

/// Number of points the marking denotes; nullopt when infinite.
std::optional<Natural> point_count(const TreePresentation& p, const TemplateMarking& f);

/// "{r0, r0.1}" using template labels.
std::string to_string(const TreePresentation& p, const TemplateMarking& f);

}  // namespace treespace
