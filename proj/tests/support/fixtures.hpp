#pragma once

#include <random>
#include <vector>

#include "treespace/function.hpp"
#include "treespace/generate.hpp"
#include "treespace/metric.hpp"
#include "treespace/tree.hpp"

namespace fixtures {

using namespace treespace;

inline TreePresentation single(PresentationNode root) {
  std::vector<PresentationNode> roots;
  roots.push_back(std::move(root));
  return TreePresentation(std::move(roots));
}

inline TreePresentation leaf_tree() { return single(leaf()); }

/// A root with one ω-group of leaves.
inline PresentationNode t1_node() { return branch({omega_group(leaf())}); }
inline TreePresentation t1() { return single(t1_node()); }

/// A root with one ω-group of copies of T₁.
inline TreePresentation t2() { return single(branch({omega_group(t1_node())})); }

/// T₂ weighted root 1, level-1 nodes 1, leaves 1/4.
inline WeightAssignment decaying_t2_weights(const TreePresentation& t2) {
  return WeightAssignment(t2, {Rational(1), Rational(1), Rational(1, 4)});
}

/// Uniform ω-branching tree of depth k (same shape as cantor_tree(k)).
inline TreePresentation uniform_tree(std::size_t k) { return cantor_tree(k); }

/// T₁ with g = 0 at the root, 1 on leaf copies 0..2, 0 on the tail.
inline SimpleFunction t1_bump() {
  ValueNode root{0, {}};
  ValueGroup g;
  for (int k = 0; k < 3; ++k) g.explicit_copies.push_back(ValueNode{1, {}});
  root.groups.push_back(std::move(g));
  return SimpleFunction{{std::move(root)}};
}

// Finite subset of ℕ named by a point of cantor_tree: the i-th element is
// one more than the previous plus the copy index.
inline std::vector<std::uint64_t> as_set(const PointAddress& b) {
  std::vector<std::uint64_t> out;
  std::uint64_t next = 0;
  for (const auto& s : b.steps) {
    out.push_back(next + s.copy);
    next = out.back() + 1;
  }
  return out;
}

struct Instance {
  TreePresentation tree;
  WeightAssignment weights;
};

/// Deterministic corpus from the default generator bounds.
inline std::vector<Instance> corpus(std::size_t count, std::uint64_t seed, const GeneratorOptions& options = {}) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto t = random_tree(rng, options);
    out.push_back(Instance{std::move(t.tree), std::move(t.weights)});
  }
  return out;
}

}  // namespace fixtures
