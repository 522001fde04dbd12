#include "treespace/generate.hpp"

#include <algorithm>
#include <stdexcept>

namespace treespace {

namespace {

std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

Rational random_weight(std::mt19937_64& rng) {
  static const Rational choices[] = {Rational(1), Rational(3, 4), Rational(1, 2),
                                     Rational(3, 8), Rational(1, 4), Rational(1, 8)};
  return choices[uniform(rng, 0, 5)];
}

PresentationNode random_node(std::mt19937_64& rng, const GeneratorOptions& o, std::size_t depth) {
  PresentationNode node{random_weight(rng), {}};
  if (depth >= o.max_depth) return node;
  const std::uint64_t groups = uniform(rng, 0, o.max_groups);
  for (std::uint64_t g = 0; g < groups; ++g) {
    const bool omega = uniform(rng, 0, 1) == 1;
    const Multiplicity m = omega ? Multiplicity::omega() : Multiplicity::finite(uniform(rng, 1, o.max_copies));
    node.groups.push_back(ChildGroup{random_node(rng, o, depth + 1), m});
  }
  return node;
}

ValueNode random_value(std::mt19937_64& rng, const TreePresentation& p, const GeneratorOptions& o, NodeId id) {
  ValueNode v{Rational(static_cast<long>(uniform(rng, 0, 8)), 8), {}};
  v.value.canonicalize();
  const auto& children = p[id].children;
  for (std::size_t g = 0; g < children.size(); ++g) {
    ValueGroup group;
    const Multiplicity m = p[children[g]].multiplicity;
    const std::uint64_t limit = m.is_omega() ? o.max_overrides : std::min<std::uint64_t>(o.max_overrides, m.count());
    const std::uint64_t count = uniform(rng, 0, limit);
    for (std::uint64_t k = 0; k < count; ++k) group.explicit_copies.push_back(random_value(rng, p, o, children[g]));
    v.groups.push_back(std::move(group));
  }
  while (!v.groups.empty() && v.groups.back().explicit_copies.empty()) v.groups.pop_back();
  return v;
}

void scale(ValueNode& v, const Rational& factor) {
  v.value /= factor;
  for (auto& g : v.groups) {
    for (auto& c : g.explicit_copies) scale(c, factor);
  }
}

}  // namespace

WeightedTree random_tree(std::mt19937_64& rng, const GeneratorOptions& options) {
  std::vector<PresentationNode> roots;
  const std::uint64_t count = uniform(rng, 1, std::max<std::size_t>(options.max_roots, 1));
  for (std::uint64_t r = 0; r < count; ++r) roots.push_back(random_node(rng, options, 0));
  TreePresentation p(std::move(roots));
  WeightAssignment w = WeightAssignment::from_tree(p);
  return WeightedTree{std::move(p), std::move(w)};
}

SimpleFunction random_function(std::mt19937_64& rng, const TreePresentation& p, const GeneratorOptions& options) {
  SimpleFunction f;
  for (NodeId r : p.roots()) f.roots.push_back(random_value(rng, p, options, r));
  return f;
}

SimpleFunction make_one_lipschitz(const TreePresentation& p, const WeightAssignment& w, SimpleFunction f) {
  const auto l = lipschitz_bound(p, f, w);
  if (!l) throw std::domain_error("function has no finite Lipschitz bound");
  if (*l > 1) {
    for (auto& r : f.roots) scale(r, *l);
  }
  return f;
}

Ordinal random_ordinal(std::mt19937_64& rng, std::size_t max_terms, std::uint64_t max_exponent,
                       std::uint64_t max_coefficient) {
  Ordinal out;
  const std::uint64_t terms = uniform(rng, 0, max_terms);
  for (std::uint64_t i = 0; i < terms; ++i) {
    const Ordinal e(uniform(rng, 0, max_exponent));
    out = out + times(omega_pow(e), Natural(static_cast<unsigned long>(uniform(rng, 1, max_coefficient))));
  }
  return out;
}

Ordinal random_nested_ordinal(std::mt19937_64& rng, std::size_t nesting, std::size_t max_terms,
                              std::uint64_t max_coefficient) {
  Ordinal out;
  const std::uint64_t terms = uniform(rng, 0, max_terms);
  for (std::uint64_t i = 0; i < terms; ++i) {
    const Ordinal e = nesting == 0 ? Ordinal(uniform(rng, 0, 3))
                                   : random_nested_ordinal(rng, nesting - 1, max_terms, max_coefficient);
    out = out + times(omega_pow(e), Natural(static_cast<unsigned long>(uniform(rng, 1, max_coefficient))));
  }
  return out;
}

}  // namespace treespace
