#pragma once

#include <optional>
#include <span>
#include <vector>

#include "treespace/metric.hpp"
#include "treespace/rational.hpp"
#include "treespace/tree.hpp"

namespace treespace {

struct ValueGroup;

/// Value tree mirroring a presentation node. `groups[g]` lists explicit
/// overrides for copies 0..m-1 of child group g; `groups` may be shorter than
/// the template's group list. Every copy without an override takes, on its
/// whole subtree, the value of this node.
struct ValueNode {
  Rational value;
  std::vector<ValueGroup> groups;
};

struct ValueGroup {
  std::vector<ValueNode> explicit_copies;
};

/// Locally constant function on [T], one value tree per root.
struct SimpleFunction {
  std::vector<ValueNode> roots;

  static SimpleFunction constant(const TreePresentation& p, const Rational& value);
};

std::vector<Diagnostic> validate(const TreePresentation& p, const SimpleFunction& f);

Rational evaluate(const SimpleFunction& f, const PointAddress& b);

/// Largest explicit copy index + 1 over all groups (0 if none).
std::uint64_t max_explicit_count(const SimpleFunction& f);

/// Least L with |f(b) - f(c)| <= L·d(b, c) for all b, c; nullopt means no
/// finite L exists (some pair at distance 0 takes different values).
std::optional<Rational> lipschitz_bound(const TreePresentation& p, const SimpleFunction& f,
                                        const WeightAssignment& w);

/// Exact sup over [T] of |f - g|.
Rational sup_difference(const TreePresentation& p, const SimpleFunction& f, const SimpleFunction& g);

}  // namespace treespace
