#include "treespace/metric.hpp"

#include <algorithm>
#include <stdexcept>

namespace treespace {

WeightAssignment::WeightAssignment(const TreePresentation& p, std::vector<Rational> weights)
    : weights_(std::move(weights)) {
  if (weights_.size() != p.size()) throw std::invalid_argument("one weight per template node required");
  for (const auto& x : weights_) {
    if (x < 0) throw std::invalid_argument("weights must be non-negative");
  }
}

WeightAssignment WeightAssignment::from_tree(const TreePresentation& p, const Rational& fallback) {
  std::vector<Rational> w;
  w.reserve(p.size());
  for (const auto& n : p.nodes()) w.push_back(n.weight.value_or(fallback));
  return WeightAssignment(p, std::move(w));
}

WeightAssignment WeightAssignment::uniform(const TreePresentation& p, const Rational& weight) {
  return WeightAssignment(p, std::vector<Rational>(p.size(), weight));
}

Rational WeightAssignment::max_weight() const {
  Rational m = 0;
  for (const auto& x : weights_) m = std::max(m, x);
  return m;
}

std::optional<Rational> WeightAssignment::min_positive() const {
  std::optional<Rational> m;
  for (const auto& x : weights_) {
    if (x > 0 && (!m || x < *m)) m = x;
  }
  return m;
}

Rational distance(const TreePresentation& p, const WeightAssignment& w, const PointAddress& b,
                  const PointAddress& c) {
  const auto pb = template_path_of(p, b);
  const auto pc = template_path_of(p, c);
  std::size_t shared = 0;
  if (b.root == c.root) {
    shared = 1;
    while (shared - 1 < b.steps.size() && shared - 1 < c.steps.size() &&
           b.steps[shared - 1] == c.steps[shared - 1]) {
      ++shared;
    }
  }
  Rational d = 0;
  for (std::size_t i = shared; i < pb.size(); ++i) d = std::max(d, w[pb[i]]);
  for (std::size_t i = shared; i < pc.size(); ++i) d = std::max(d, w[pc[i]]);
  return d;
}

TreePresentation with_weights(const TreePresentation& p, const WeightAssignment& w) {
  auto term = p.to_term();
  // Preorder rebuild assigns the same ids, so walk the term in preorder.
  NodeId next = 0;
  auto assign = [&](auto&& self, PresentationNode& node) -> void {
    node.weight = w[next++];
    for (auto& g : node.groups) self(self, g.templ);
  };
  for (auto& r : term) assign(assign, r);
  return TreePresentation(std::move(term));
}

}  // namespace treespace
