#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "treespace/check.hpp"
#include "treespace/construction.hpp"
#include "treespace/function.hpp"
#include "treespace/metric.hpp"
#include "treespace/ordinal.hpp"
#include "treespace/tree.hpp"

namespace treespace {

struct PipelineReport {
  Rational epsilon;
  /// Frag([T], ε) = eta + 1 at the scale the construction was built for.
  Ordinal eta;
  Ordinal lambda;
  Natural n;
  /// lambda + 2n + 2
  Ordinal bound;
  Ordinal o_n;
  std::vector<Check> checks;
  std::optional<Rational> error;
  std::optional<Rational> lipschitz;
};

/// Shape data and every verify_construction / verify_quotient check.
PipelineReport construction_report(const ConstructionTree& n, std::uint64_t copy_bound = 2);

/// Locally constant f on the tree `shape` with |f − f1| ≤ ε at every
/// template. Pieces of the clopen partition are a node together with the
/// subtrees of its ω-groups; f takes the value of f1 at the piece's top
/// node. Throws std::invalid_argument if f1 oscillates by more than ε on
/// such a piece.
SimpleFunction uniform_approximation(const TreePresentation& shape, std::span<const Rational> f1,
                                     const Rational& epsilon);

struct Approximation {
  SimpleFunction y;
  PipelineReport report;
  ConstructionTree construction;
  /// Per construction node: g at the chosen point of M̃, and the
  /// approximating value.
  std::vector<Rational> f1;
  std::vector<Rational> f;
};

/// y = f∘q with sup|g − y| ≤ max(1, L)·ε, L the Lipschitz constant of g.
/// The construction is built at ε/2. Throws std::domain_error when g has no
/// finite Lipschitz constant or Frag is infinite.
Approximation approximate(const TreePresentation& p, const WeightAssignment& w, const SimpleFunction& g,
                          const Rational& epsilon, std::uint64_t copy_bound = 2);

}  // namespace treespace
