#pragma once

#include <optional>
#include <span>
#include <vector>

#include "treespace/clopen.hpp"
#include "treespace/marking.hpp"
#include "treespace/metric.hpp"
#include "treespace/ordinal.hpp"
#include "treespace/tree.hpp"

namespace treespace {

/// Diameter data of a marking under a weighted ultrametric, per template.
///
/// `reach[t]` is the largest weight on a path from t down to a marked node
/// of t's subtree (nullopt when the subtree is unmarked). Two points in
/// different copies below a node are at distance max of their reaches, so
/// every diameter reduces to these values.
class MarkingGeometry {
 public:
  MarkingGeometry(const TreePresentation& p, const WeightAssignment& w, const TemplateMarking& f);

  const std::optional<Rational>& reach(NodeId id) const { return reach_.at(id); }
  /// d-diam(U_t ∩ F) for the template t.
  const Rational& cone_diameter(NodeId id) const { return cone_.at(id); }
  /// d-diam((U_t \ excluded) ∩ F) where `excluded[g]` copies of group g are
  /// cut away (ω-groups always keep infinitely many).
  Rational diameter(NodeId id, std::span<const std::uint64_t> excluded) const;
  /// Infimum of d-diam(U ∩ F) over basic neighbourhoods U of an instance of t.
  Rational germ_diameter(NodeId id) const;

 private:
  const TreePresentation* p_;
  const TemplateMarking* f_;
  std::vector<std::optional<Rational>> reach_;
  std::vector<Rational> cone_;
};

/// Exact d-diameter of (set of c) ∩ (set of F).
Rational clopen_diam(const TreePresentation& p, const ClopenDescriptor& c, const TemplateMarking& f,
                     const WeightAssignment& w);
/// Same, reusing the geometry of F when many descriptors are measured.
Rational clopen_diam(const TreePresentation& p, const ClopenDescriptor& c, const MarkingGeometry& geo);

/// Does the descriptor meet the marking.
bool intersects(const TreePresentation& p, const ClopenDescriptor& c, const TemplateMarking& f);

/// F'_ε: the points of F all of whose basic neighbourhoods U satisfy
/// d-diam(U ∩ F) ≥ ε. Throws std::invalid_argument for ε ≤ 0 or non-closed F.
TemplateMarking derive_once(const TreePresentation& p, const TemplateMarking& f, const WeightAssignment& w,
                            const Rational& epsilon);

/// start, F'_ε, F''_ε, … ending at the first empty or repeated marking.
std::vector<TemplateMarking> derivation_sequence(const TreePresentation& p, const WeightAssignment& w,
                                                 const Rational& epsilon, const TemplateMarking& start);

/// Frag(F, ε); nullopt stands for ∞ (the derivation became stationary
/// while non-empty).
std::optional<Ordinal> frag_index(const TreePresentation& p, const WeightAssignment& w,
                                  const Rational& epsilon, const TemplateMarking& start);

/// ε at which Frag(F, ε) attains sup over ε > 0 for the finite weight set:
/// half the smallest positive weight (nullopt if all weights vanish).
std::optional<Rational> fragmentation_scale(const WeightAssignment& w);

}  // namespace treespace
