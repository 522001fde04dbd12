#include "treespace/function.hpp"

#include <algorithm>
#include <stdexcept>

#include "treespace/refinement.hpp"

namespace treespace {

SimpleFunction SimpleFunction::constant(const TreePresentation& p, const Rational& value) {
  SimpleFunction f;
  f.roots.assign(p.roots().size(), ValueNode{value, {}});
  return f;
}

namespace {

void validate_node(const TreePresentation& p, NodeId id, const ValueNode& v, const std::string& path,
                   std::vector<Diagnostic>& out) {
  const auto& n = p[id];
  if (v.groups.size() > n.children.size()) {
    out.push_back({path, "more value groups than template groups"});
  }
  for (std::size_t g = 0; g < v.groups.size() && g < n.children.size(); ++g) {
    const NodeId c = n.children[g];
    const auto& list = v.groups[g].explicit_copies;
    if (!p[c].multiplicity.is_omega() && list.size() > p[c].multiplicity.count()) {
      out.push_back({path + "." + std::to_string(g), "more explicit copies than multiplicity"});
    }
    for (std::size_t k = 0; k < list.size(); ++k) {
      validate_node(p, c, list[k], path + "." + std::to_string(g) + ":" + std::to_string(k), out);
    }
  }
}

std::uint64_t max_explicit(const ValueNode& v) {
  std::uint64_t m = 0;
  for (const auto& g : v.groups) {
    m = std::max<std::uint64_t>(m, g.explicit_copies.size());
    for (const auto& c : g.explicit_copies) m = std::max(m, max_explicit(c));
  }
  return m;
}

}  // namespace

std::vector<Diagnostic> validate(const TreePresentation& p, const SimpleFunction& f) {
  std::vector<Diagnostic> out;
  if (f.roots.size() != p.roots().size()) {
    out.push_back({"", "function root count differs from tree root count"});
    return out;
  }
  for (std::size_t r = 0; r < f.roots.size(); ++r) {
    validate_node(p, p.roots()[r], f.roots[r], "r" + std::to_string(r), out);
  }
  return out;
}

Rational evaluate(const SimpleFunction& f, const PointAddress& b) {
  if (b.root >= f.roots.size()) throw std::out_of_range("root index out of range");
  const ValueNode* node = &f.roots[b.root];
  for (const auto& s : b.steps) {
    if (s.group >= node->groups.size()) return node->value;
    const auto& list = node->groups[s.group].explicit_copies;
    if (s.copy >= list.size()) return node->value;
    node = &list[s.copy];
  }
  return node->value;
}

std::uint64_t max_explicit_count(const SimpleFunction& f) {
  std::uint64_t m = 0;
  for (const auto& r : f.roots) m = std::max(m, max_explicit(r));
  return m;
}

namespace {

struct Sample {
  Rational reach;  // max weight on the path from the group's template down
  Rational value;
};

void collect(const TreePresentation& t, const WeightAssignment& w, std::span<const Rational> values,
             NodeId id, const Rational& above, std::vector<Sample>& out) {
  const Rational reach = std::max(above, w[id]);
  out.push_back(Sample{reach, values[id]});
  for (NodeId c : t[id].children) collect(t, w, values, c, reach, out);
}

// Tracks sup |Δf| / d; `infinite` once some pair has d = 0 and Δf ≠ 0.
struct RatioSup {
  Rational best = 0;
  bool infinite = false;

  void add(const Rational& diff, const Rational& d) {
    if (diff == 0 || infinite) return;
    if (d == 0) {
      infinite = true;
      return;
    }
    const Rational ratio = diff / d;
    if (ratio > best) best = ratio;
  }
};

}  // namespace

std::optional<Rational> lipschitz_bound(const TreePresentation& p, const SimpleFunction& f,
                                        const WeightAssignment& w) {
  const SimpleFunction fs[] = {f};
  const Refinement r = refine(p, fs);
  const WeightAssignment rw = r.lift(w);
  const auto& t = r.tree;
  std::span<const Rational> values = r.values[0];
  RatioSup sup;

  // Pairs meeting at a node m: m against its descendants, and points in two
  // different child copies. A single ω group supplies two distinct copies.
  auto cross = [&](const std::vector<std::vector<Sample>>& groups, const std::vector<bool>& many) {
    for (std::size_t a = 0; a < groups.size(); ++a) {
      for (std::size_t b = a; b < groups.size(); ++b) {
        if (a == b && !many[a]) continue;
        for (const auto& x : groups[a]) {
          for (const auto& y : groups[b]) sup.add(abs(x.value - y.value), std::max(x.reach, y.reach));
        }
      }
    }
  };

  for (NodeId m = 0; m < t.size() && !sup.infinite; ++m) {
    std::vector<std::vector<Sample>> groups;
    std::vector<bool> many;
    for (NodeId c : t[m].children) {
      groups.emplace_back();
      collect(t, rw, values, c, Rational(0), groups.back());
      many.push_back(t[c].multiplicity.is_omega());
      for (const auto& x : groups.back()) sup.add(abs(values[m] - x.value), x.reach);
    }
    cross(groups, many);
  }
  if (!sup.infinite && t.roots().size() > 1) {
    std::vector<std::vector<Sample>> groups;
    for (NodeId root : t.roots()) {
      groups.emplace_back();
      collect(t, rw, values, root, Rational(0), groups.back());
    }
    cross(groups, std::vector<bool>(groups.size(), false));
  }
  if (sup.infinite) return std::nullopt;
  return sup.best;
}

Rational sup_difference(const TreePresentation& p, const SimpleFunction& f, const SimpleFunction& g) {
  const SimpleFunction fs[] = {f, g};
  const Refinement r = refine(p, fs);
  Rational best = 0;
  for (NodeId n = 0; n < r.tree.size(); ++n) best = std::max(best, Rational(abs(r.values[0][n] - r.values[1][n])));
  return best;
}

}  // namespace treespace
