#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "treespace/check.hpp"
#include "treespace/function.hpp"
#include "treespace/metric.hpp"
#include "treespace/rational.hpp"
#include "treespace/tree.hpp"

namespace treespace {

struct InvariantOptions {
  Rational epsilon{1, 2};
  /// ω-copies enumerated by the pointwise comparisons (at least 2).
  std::uint64_t copy_bound = 2;
  /// Pairwise metric checks look at no more than this many points.
  std::size_t pair_sample = 120;
};

/// Every invariant of the library on one input, each compared against the
/// brute-force oracle where one exists: metric, topological indices,
/// derivation, construction tree and quotient map, and, when a function is
/// given, the approximation pipeline.
std::vector<Check> check_invariants(const TreePresentation& p, const WeightAssignment& w,
                                    const InvariantOptions& options,
                                    const std::optional<SimpleFunction>& g = std::nullopt);

}  // namespace treespace
