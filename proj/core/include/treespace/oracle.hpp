#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "treespace/function.hpp"
#include "treespace/metric.hpp"
#include "treespace/rational.hpp"
#include "treespace/tree.hpp"

/// Reference computations on explicit finite point sets. Every routine
/// works on enumerate_points output and the literal definitions, so it
/// shares no logic with the template-level algorithms it is compared to.
///
/// A point set enumerated at copy bound B + 1 stands for the whole tree
/// when neighbourhoods only exclude copies with index below B: the copy
/// with index B represents every remaining copy of its ω-group.
namespace treespace::oracle {

using PointSet = std::set<PointAddress>;

/// Max weight over the symmetric difference of the two prefix sets.
Rational distance(const TreePresentation& p, const WeightAssignment& w, const PointAddress& b,
                  const PointAddress& c);

/// Rounds of deleting maximal points of the enumeration until nothing is
/// left.
std::size_t ordinal_index(const TreePresentation& p, std::uint64_t copy_bound = 2);

/// Points x of `f` such that every basic neighbourhood U of x (U_x minus a
/// subset of the direct successors: any finite-group copy, ω-copies with
/// index below `exclusion_bound`)
/// has diam(U ∩ f) ≥ ε. `f` should be enumerated at a copy bound above
/// `exclusion_bound`.
PointSet derive(const TreePresentation& p, const WeightAssignment& w, const PointSet& f, const Rational& epsilon,
                std::uint64_t exclusion_bound);

/// Non-isolated points of `f`, isolation tested against the same
/// neighbourhoods as derive.
PointSet cb_derive(const TreePresentation& p, const PointSet& f, std::uint64_t exclusion_bound);

/// Rank and size of the last non-empty set of the Cantor–Bendixson
/// derivation of the whole tree.
struct CbResult {
  std::size_t rank;
  std::size_t final_count;
};
CbResult cb_rank(const TreePresentation& p, std::uint64_t exclusion_bound = 2);

/// Number of ε-derivation steps of the whole tree until it is empty;
/// nullopt if it stops shrinking first.
std::optional<std::size_t> frag_index(const TreePresentation& p, const WeightAssignment& w,
                                      const Rational& epsilon, std::uint64_t exclusion_bound = 2);

/// Largest |f(b) − f(c)| / d(b, c) over enumerated pairs; nullopt if some
/// pair at distance 0 differs.
std::optional<Rational> lipschitz(const TreePresentation& p, const WeightAssignment& w, const SimpleFunction& f,
                                  std::uint64_t copy_bound);

Rational sup_difference(const TreePresentation& p, const SimpleFunction& f, const SimpleFunction& g,
                        std::uint64_t copy_bound);

}  // namespace treespace::oracle
