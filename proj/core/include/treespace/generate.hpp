#pragma once

#include <cstdint>
#include <random>

#include "treespace/function.hpp"
#include "treespace/metric.hpp"
#include "treespace/ordinal.hpp"
#include "treespace/tree.hpp"

namespace treespace {

struct GeneratorOptions {
  std::size_t max_depth = 4;
  std::size_t max_groups = 3;
  std::size_t max_roots = 2;
  std::uint64_t max_copies = 3;
  /// Explicit overrides per group in generated functions.
  std::size_t max_overrides = 2;
};

struct WeightedTree {
  TreePresentation tree;
  WeightAssignment weights;
};

/// Random presentation with positive weights drawn from
/// {1, 3/4, 1/2, 3/8, 1/4, 1/8}. The result depends only on the engine
/// state and the options.
WeightedTree random_tree(std::mt19937_64& rng, const GeneratorOptions& options = {});

/// Random locally constant function with values in {0, 1/8, …, 1}.
SimpleFunction random_function(std::mt19937_64& rng, const TreePresentation& p,
                               const GeneratorOptions& options = {});

/// Rescales f so that its Lipschitz constant under w is at most 1. Throws
/// std::domain_error if f has no finite Lipschitz constant.
SimpleFunction make_one_lipschitz(const TreePresentation& p, const WeightAssignment& w, SimpleFunction f);

/// Random ordinal below ω^ω: up to `max_terms` terms with exponents and
/// coefficients below the given limits.
Ordinal random_ordinal(std::mt19937_64& rng, std::size_t max_terms = 4, std::uint64_t max_exponent = 5,
                       std::uint64_t max_coefficient = 4);

/// Random ordinal whose exponents are themselves random ordinals, nested
/// up to `nesting` levels.
Ordinal random_nested_ordinal(std::mt19937_64& rng, std::size_t nesting, std::size_t max_terms = 3,
                              std::uint64_t max_coefficient = 4);

}  // namespace treespace
