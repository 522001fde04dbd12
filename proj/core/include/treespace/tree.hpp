#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treespace/rational.hpp"

namespace treespace {

/// Index of a template node in a TreePresentation (preorder).
using NodeId = std::size_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Number of copies in a child group: a positive natural or ω.
class Multiplicity {
 public:
  static constexpr Multiplicity omega() noexcept { return Multiplicity(true, 0); }
  static constexpr Multiplicity finite(std::uint64_t n) noexcept { return Multiplicity(false, n); }

  constexpr Multiplicity() noexcept = default;

  constexpr bool is_omega() const noexcept { return omega_; }
  /// Copy count of a finite group; meaningless for ω.
  constexpr std::uint64_t count() const noexcept { return count_; }
  constexpr bool admits(std::uint64_t copy) const noexcept { return omega_ || copy < count_; }
  /// Copies visible when ω-groups are cut off at `bound`.
  constexpr std::uint64_t truncated(std::uint64_t bound) const noexcept {
    return omega_ ? bound : count_;
  }

  friend constexpr bool operator==(const Multiplicity&, const Multiplicity&) = default;

 private:
  constexpr Multiplicity(bool omega, std::uint64_t n) noexcept : omega_(omega), count_(n) {}
  bool omega_ = false;
  std::uint64_t count_ = 1;
};

struct ChildGroup;

/// Finite term describing a regular ω-tree. Each child group stands for
/// `multiplicity` copies of one template subtree.
struct PresentationNode {
  std::optional<Rational> weight;
  std::vector<ChildGroup> groups;
};

struct ChildGroup {
  PresentationNode templ;
  Multiplicity multiplicity;
};

PresentationNode leaf(std::optional<Rational> weight = std::nullopt);
PresentationNode branch(std::vector<ChildGroup> groups, std::optional<Rational> weight = std::nullopt);
ChildGroup omega_group(PresentationNode templ);
ChildGroup finite_group(PresentationNode templ, std::uint64_t copies);

/// Flattened template node. `group` is the index of this template among the
/// parent's child groups; for roots it is the root index.
struct TemplateNode {
  NodeId parent = kNoNode;
  std::size_t root = 0;
  std::size_t group = 0;
  Multiplicity multiplicity = Multiplicity::finite(1);
  std::size_t depth = 0;
  std::optional<Rational> weight;
  std::vector<NodeId> children;
};

/// A finitely presented compact tree: finitely many roots, each a finite
/// term. Template ids are assigned in preorder.
class TreePresentation {
 public:
  TreePresentation() = default;
  explicit TreePresentation(std::vector<PresentationNode> roots);

  std::size_t size() const noexcept { return nodes_.size(); }
  const TemplateNode& operator[](NodeId id) const { return nodes_.at(id); }
  std::span<const TemplateNode> nodes() const noexcept { return nodes_; }
  std::span<const NodeId> roots() const noexcept { return roots_; }

  NodeId child(NodeId id, std::size_t group) const { return nodes_.at(id).children.at(group); }
  bool is_leaf(NodeId id) const { return nodes_.at(id).children.empty(); }
  bool is_ancestor_or_self(NodeId ancestor, NodeId id) const;
  /// Template ids from the root down to `id`, inclusive.
  std::vector<NodeId> template_path(NodeId id) const;
  /// Ids of the subtree rooted at `id` in preorder (contiguous range).
  std::span<const TemplateNode> subtree(NodeId id) const;
  NodeId subtree_end(NodeId id) const { return subtree_end_.at(id); }
  std::size_t max_depth() const noexcept;

  std::vector<PresentationNode> to_term() const;

 private:
  NodeId flatten(const PresentationNode& node, NodeId parent, std::size_t root,
                 std::size_t group, Multiplicity multiplicity, std::size_t depth);
  PresentationNode rebuild(NodeId id) const;

  std::vector<TemplateNode> nodes_;
  std::vector<NodeId> subtree_end_;
  std::vector<NodeId> roots_;
};

/// One step below a node: which child group, which copy inside it.
struct Step {
  std::size_t group = 0;
  std::uint64_t copy = 0;
  friend auto operator<=>(const Step&, const Step&) = default;
};

/// A semantic node t of the unfolded tree, equivalently the finite branch
/// b_t. Ordered lexicographically with prefixes first.
struct PointAddress {
  std::size_t root = 0;
  std::vector<Step> steps;

  PointAddress child(std::size_t group, std::uint64_t copy) const;
  PointAddress prefix(std::size_t length) const;
  bool extends(const PointAddress& prefix) const;
  std::size_t depth() const noexcept { return steps.size(); }

  friend auto operator<=>(const PointAddress&, const PointAddress&) = default;
};

struct Diagnostic {
  std::string path;
  std::string message;
};

std::vector<Diagnostic> validate(const TreePresentation& p);

/// Template node an address instantiates. Throws std::out_of_range for an
/// address that does not exist in the presentation.
NodeId template_of(const TreePresentation& p, const PointAddress& b);
/// The instance of a template reached through copy 0 of every group.
PointAddress first_instance(const TreePresentation& p, NodeId id);
bool is_valid_address(const TreePresentation& p, const PointAddress& b);
/// Template ids along the address, one per prefix (size depth()+1).
std::vector<NodeId> template_path_of(const TreePresentation& p, const PointAddress& b);

/// All addresses whose ω-copy indices are below `copy_bound` (finite
/// groups are enumerated in full), in lexicographic order.
std::vector<PointAddress> enumerate_points(const TreePresentation& p, std::uint64_t copy_bound);
/// Same, restricted to the cone below `top` (inclusive).
std::vector<PointAddress> enumerate_points_below(const TreePresentation& p, const PointAddress& top,
                                                 std::uint64_t copy_bound);

/// Uniform ω-branching tree of the given depth: the depth-truncated tree of
/// finite subsets of ℕ ordered by extension.
TreePresentation cantor_tree(std::size_t depth);

/// Template address such as "r0.2.1" (root index, then group indices).
std::string template_label(const TreePresentation& p, NodeId id);
/// Point address such as "r0/1:3/0:0" (root, then group:copy per step).
std::string to_string(const PointAddress& b);

}  // namespace treespace
