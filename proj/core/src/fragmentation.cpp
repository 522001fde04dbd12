#include "treespace/fragmentation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace treespace {

MarkingGeometry::MarkingGeometry(const TreePresentation& p, const WeightAssignment& w,
                                 const TemplateMarking& f)
    : p_(&p), f_(&f), reach_(p.size()), cone_(p.size()) {
  if (f.size() != p.size() || w.size() != p.size()) {
    throw std::invalid_argument("marking and weights must match the presentation");
  }
  for (NodeId id = p.size(); id-- > 0;) {
    std::optional<Rational> r;
    if (f[id]) r = w[id];
    for (NodeId c : p[id].children) {
      if (!reach_[c]) continue;
      const Rational via = std::max(w[id], *reach_[c]);
      if (!r || via > *r) r = via;
    }
    reach_[id] = r;
    cone_[id] = diameter(id, {});
  }
}

Rational MarkingGeometry::diameter(NodeId id, std::span<const std::uint64_t> excluded) const {
  const auto& p = *p_;
  std::uint64_t copies = 0;  // marked copies left, saturating at 2
  std::optional<Rational> top;
  NodeId sole = kNoNode;
  const auto& children = p[id].children;
  for (std::size_t g = 0; g < children.size(); ++g) {
    const NodeId c = children[g];
    if (!reach_[c]) continue;
    const Multiplicity m = p[c].multiplicity;
    const std::uint64_t cut = g < excluded.size() ? excluded[g] : 0;
    const std::uint64_t left = m.is_omega() ? 2 : std::min<std::uint64_t>(m.count() - std::min(cut, m.count()), 2);
    if (left == 0) continue;
    copies = std::min<std::uint64_t>(copies + left, 2);
    if (!top || *reach_[c] > *top) top = *reach_[c];
    sole = c;
  }
  if ((copies >= 1 && (*f_)[id]) || copies >= 2) return *top;
  if (copies == 1) return cone_[sole];
  return 0;
}

Rational MarkingGeometry::germ_diameter(NodeId id) const {
  const auto& children = (*p_)[id].children;
  std::vector<std::uint64_t> all(children.size());
  for (std::size_t g = 0; g < children.size(); ++g) {
    const Multiplicity m = (*p_)[children[g]].multiplicity;
    all[g] = m.is_omega() ? 0 : m.count();
  }
  return diameter(id, all);
}

namespace {

std::vector<std::uint64_t> exclusion_counts(const TreePresentation& p, const ClopenDescriptor& c, NodeId id) {
  std::vector<std::uint64_t> counts(p[id].children.size(), 0);
  std::vector<Step> distinct = c.excluded;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (const auto& s : distinct) {
    if (s.group >= counts.size() || !p[p[id].children[s.group]].multiplicity.admits(s.copy)) {
      throw std::out_of_range("excluded step is not a direct successor");
    }
    ++counts[s.group];
  }
  return counts;
}

}  // namespace

Rational clopen_diam(const TreePresentation& p, const ClopenDescriptor& c, const TemplateMarking& f,
                     const WeightAssignment& w) {
  return clopen_diam(p, c, MarkingGeometry(p, w, f));
}

Rational clopen_diam(const TreePresentation& p, const ClopenDescriptor& c, const MarkingGeometry& geo) {
  const NodeId id = template_of(p, c.root);
  return geo.diameter(id, exclusion_counts(p, c, id));
}

bool intersects(const TreePresentation& p, const ClopenDescriptor& c, const TemplateMarking& f) {
  const NodeId id = template_of(p, c.root);
  if (f[id]) return true;
  const auto below = marked_below(p, f);
  const auto counts = exclusion_counts(p, c, id);
  const auto& children = p[id].children;
  for (std::size_t g = 0; g < children.size(); ++g) {
    const Multiplicity m = p[children[g]].multiplicity;
    const bool left = m.is_omega() || counts[g] < m.count();
    if (left && below[children[g]]) return true;
  }
  return false;
}

TemplateMarking derive_once(const TreePresentation& p, const TemplateMarking& f, const WeightAssignment& w,
                            const Rational& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  if (!is_closed(p, f)) throw std::invalid_argument("derive_once requires a closed marking");
  const MarkingGeometry geo(p, w, f);
  TemplateMarking out = TemplateMarking::none(p);
  for (NodeId id = 0; id < p.size(); ++id) {
    if (f[id] && geo.germ_diameter(id) >= epsilon) out.set(id, true);
  }
  return out;
}

std::vector<TemplateMarking> derivation_sequence(const TreePresentation& p, const WeightAssignment& w,
                                                 const Rational& epsilon, const TemplateMarking& start) {
  std::vector<TemplateMarking> seq{start};
  while (!seq.back().is_empty()) {
    TemplateMarking next = derive_once(p, seq.back(), w, epsilon);
    const bool stationary = next == seq.back();
    seq.push_back(std::move(next));
    if (stationary) break;
  }
  return seq;
}

std::optional<Ordinal> frag_index(const TreePresentation& p, const WeightAssignment& w, const Rational& epsilon,
                                  const TemplateMarking& start) {
  const auto seq = derivation_sequence(p, w, epsilon, start);
  if (!seq.back().is_empty()) return std::nullopt;
  return Ordinal(static_cast<std::uint64_t>(seq.size() - 1));
}

std::optional<Rational> fragmentation_scale(const WeightAssignment& w) {
  auto m = w.min_positive();
  if (!m) return std::nullopt;
  return Rational(*m / 2);
}

}  // namespace treespace
