#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "treespace/check.hpp"
#include "treespace/clopen.hpp"
#include "treespace/marking.hpp"
#include "treespace/metric.hpp"
#include "treespace/ordinal.hpp"
#include "treespace/refinement.hpp"
#include "treespace/tree.hpp"

namespace treespace {

/// One template of the construction tree: the basic clopen set rooted at
/// every instance of `source`, minus the single-copy successor groups listed
/// in `excluded` (type II).
struct ConstructionNode {
  NodeId source = 0;
  std::vector<std::size_t> excluded;
  std::size_t alpha = 0;
  std::vector<std::size_t> children;

  DescriptorKind kind() const noexcept {
    return excluded.empty() ? DescriptorKind::typeI : DescriptorKind::typeII;
  }
};

/// A concrete element of the construction tree: a node template together
/// with the address (in the refined source tree) of its descriptor root.
struct ConstructionInstance {
  std::size_t node = 0;
  PointAddress root;
  friend auto operator<=>(const ConstructionInstance&, const ConstructionInstance&) = default;
};

/// The well-founded tree 𝒩 of basic clopen sets ordered by reverse
/// inclusion, presented over a refinement of the input tree in which every
/// finite group is split into single copies (so that excluded successor
/// sets are copy-uniform).
///
/// All members are plain data; verify_construction recomputes everything it
/// checks from them.
struct ConstructionTree {
  Refinement source;
  WeightAssignment weights;  // on source.tree
  Rational epsilon;
  /// [T]^(0) ⊋ [T]^(1) ⊋ … ⊋ [T]^(η+1) = ∅ at scale epsilon.
  std::vector<TemplateMarking> derivation;
  std::vector<ConstructionNode> nodes;
  std::vector<std::size_t> roots;

  /// η with Frag([T], ε) = η + 1.
  std::size_t eta() const { return derivation.size() - 2; }

  ClopenDescriptor descriptor(const ConstructionInstance& m) const;
  /// The same set in the address space of the input tree.
  ClopenDescriptor original_descriptor(const ConstructionInstance& m) const;
  /// Instance rooted at the all-zero-copies instance of the node's source.
  ConstructionInstance canonical_instance(std::size_t node) const;
};

/// 𝒩 as a regular tree presentation; `node_of[t]` is the construction node
/// behind template t. Child multiplicity is ω iff the source path between
/// the two descriptor roots crosses an ω-group.
struct ConstructionShape {
  TreePresentation tree;
  std::vector<std::size_t> node_of;
  std::vector<NodeId> template_of_node;
};

/// Throws std::logic_error when the node graph is not a finite forest or
/// an initial node repeats along an ω-group.
ConstructionShape shape(const ConstructionTree& n);

/// Builds 𝒩 for d and ε. Throws std::invalid_argument for ε ≤ 0 and
/// std::domain_error if Frag([T], ε) is infinite.
ConstructionTree build_construction_tree(const TreePresentation& p, const WeightAssignment& w,
                                         const Rational& epsilon);
/// Same, on a refinement whose finite groups are all single copies;
/// `refined_weights` live on source.tree.
ConstructionTree build_construction_tree(Refinement source, const WeightAssignment& refined_weights,
                                         const Rational& epsilon);

/// q(b): the ⊆-smallest element of 𝒩 containing b, for b given in refined
/// coordinates. Throws std::domain_error if no element contains b.
ConstructionInstance quotient_map_refined(const ConstructionTree& n, const PointAddress& b);
/// q(b) for b given in input-tree coordinates.
ConstructionInstance quotient_map(const ConstructionTree& n, const PointAddress& b);

/// Lexicographically least point (refined coordinates) of M̃ at the
/// canonical instance of `node`; nullopt when M̃ is empty.
std::optional<PointAddress> tilde_witness(const ConstructionTree& n, std::size_t node);

/// Trichotomy, well-foundedness, finitely many initial nodes, cover, tilde
/// partition, diam(M̃) < ε, o(𝒩) ≤ λ+2n+2, α-labels, α-descent.
/// Pointwise parts enumerate ω-copies below `copy_bound` (at least 2).
std::vector<Check> verify_construction(const ConstructionTree& n, std::uint64_t copy_bound = 2);

/// Surjectivity of q and q⁻¹(U_M) = M for every M.
std::vector<Check> verify_quotient(const ConstructionTree& n, std::uint64_t copy_bound = 2);

/// Upper bound λ + 2n + 2 on o(𝒩) for η = λ + n (λ = 0 in this class).
Ordinal construction_index_bound(std::size_t eta);

}  // namespace treespace
