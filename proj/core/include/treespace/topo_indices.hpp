#pragma once

#include <vector>

#include "treespace/marking.hpp"
#include "treespace/ordinal.hpp"
#include "treespace/tree.hpp"

namespace treespace {

/// o(T): number of rounds of deleting maximal nodes until T is empty.
Ordinal ordinal_index(const TreePresentation& p);

/// β with [T] homeomorphic to [0, β]. Children are laid out with finite
/// groups first in listed order, then the ω-groups round-robin; roots are
/// concatenated with the last root closing the interval.
Ordinal interval_type(const TreePresentation& p);

/// β_t for each template t: U_t is homeomorphic to [0, β_t] with t ↦ β_t.
std::vector<Ordinal> interval_types(const TreePresentation& p);

/// The homeomorphism [T] → [0, β] realizing interval_type.
Ordinal point_to_ordinal(const TreePresentation& p, const PointAddress& b);

/// Single-rooted presentation whose interval type is β. Throws
/// std::domain_error for β ≥ ω^ω, which has no regular finite-depth
/// presentation.
TreePresentation tree_of_interval(const Ordinal& beta);

struct CbRank {
  Ordinal rank;
  Natural final_count;
};

/// Cantor–Bendixson rank and the size of the last non-empty derived set,
/// read off the interval type: [0, ω^γ·n + lower] has rank γ+1 and n points
/// in its last derived set when γ ≥ 1; a finite [0, n] has rank 1 and n+1
/// points.
CbRank cb_rank(const TreePresentation& p);

/// Removes the isolated points of a closed marking. A node is isolated iff
/// no ω-group below it carries a mark (finite successors can all be cut
/// away by a basic neighbourhood, ω tails cannot).
TemplateMarking cb_derive(const TreePresentation& p, const TemplateMarking& f);

/// Full marking, then cb_derive until empty (the empty marking included).
std::vector<TemplateMarking> cb_sequence(const TreePresentation& p);

}  // namespace treespace
