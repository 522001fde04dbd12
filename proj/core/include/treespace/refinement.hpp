#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "treespace/function.hpp"
#include "treespace/metric.hpp"
#include "treespace/tree.hpp"

namespace treespace {

/// A re-presentation of the same tree in which every finite group is split
/// into single copies and every ω-group is split into its explicitly
/// overridden copies plus an ω tail. On the refined tree each of the given
/// functions takes one value per template node.
struct Refinement {
  TreePresentation tree;
  /// values[i][n]: value of function i on refined template n.
  std::vector<std::vector<Rational>> values;
  /// Original template each refined template instantiates.
  std::vector<NodeId> origin;
  /// Group index of the originating group in the original parent template.
  std::vector<std::size_t> origin_group;
  /// Original copy index of a single-copy group, or first copy of an ω tail.
  std::vector<std::uint64_t> copy_offset;

  PointAddress to_refined(const PointAddress& b) const;
  PointAddress to_original(const PointAddress& b) const;
  WeightAssignment lift(const WeightAssignment& w) const;
  /// Express a per-template function on the refined tree as a SimpleFunction
  /// on the original tree. Throws std::logic_error if the values are not
  /// constant on ω tails.
  SimpleFunction lower(const TreePresentation& original, std::span<const Rational> values) const;
};

Refinement refine(const TreePresentation& p, std::span<const SimpleFunction> functions);

}  // namespace treespace
