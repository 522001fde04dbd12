#pragma once

#include <string>

#include "treespace/construction.hpp"
#include "treespace/metric.hpp"
#include "treespace/tree.hpp"

namespace treespace {

/// Graphviz digraph with one vertex per template; vertex ids are template
/// labels and edges carry the group multiplicity (`×ω`, `×3`).
std::string to_dot(const TreePresentation& p);
std::string to_dot(const TreePresentation& p, const WeightAssignment& w);

/// The construction tree: vertices show the descriptor in input-tree
/// coordinates (at the first instance), its type and α-label.
std::string to_dot(const ConstructionTree& n);

}  // namespace treespace
