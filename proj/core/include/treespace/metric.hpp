#pragma once

#include <optional>
#include <vector>

#include "treespace/rational.hpp"
#include "treespace/tree.hpp"

namespace treespace {

/// One non-negative rational weight per template node. Copies of a
/// template share its weight.
///
/// The induced pseudo-metric is d(b, c) = max weight over the nodes in the
/// symmetric difference of the branches b and c; it is an ultrametric.
class WeightAssignment {
 public:
  WeightAssignment() = default;
  WeightAssignment(const TreePresentation& p, std::vector<Rational> weights);

  /// Weights stored in the presentation; nodes without one get `fallback`.
  static WeightAssignment from_tree(const TreePresentation& p, const Rational& fallback = 1);
  static WeightAssignment uniform(const TreePresentation& p, const Rational& weight);

  const Rational& operator[](NodeId id) const { return weights_.at(id); }
  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<Rational>& values() const noexcept { return weights_; }

  Rational max_weight() const;
  std::optional<Rational> min_positive() const;

 private:
  std::vector<Rational> weights_;
};

Rational distance(const TreePresentation& p, const WeightAssignment& w, const PointAddress& b,
                  const PointAddress& c);

/// Copy of `p` whose template weights are taken from `w`.
TreePresentation with_weights(const TreePresentation& p, const WeightAssignment& w);

}  // namespace treespace
