#include "treespace/refinement.hpp"

#include <algorithm>
#include <stdexcept>

namespace treespace {

namespace {

// Per-function cursor into a value tree; `node == nullptr` means the whole
// subtree is constant at `value`.
struct Source {
  const ValueNode* node = nullptr;
  Rational value;
};

class Refiner {
 public:
  Refiner(const TreePresentation& p, std::size_t function_count) : p_(p) {
    out_.values.resize(function_count);
  }

  Refinement run(std::span<const SimpleFunction> functions) {
    std::vector<PresentationNode> roots;
    for (std::size_t r = 0; r < p_.roots().size(); ++r) {
      std::vector<Source> sources;
      for (const auto& f : functions) {
        if (r >= f.roots.size()) throw std::invalid_argument("function has fewer roots than the tree");
        sources.push_back(Source{&f.roots[r], f.roots[r].value});
      }
      roots.push_back(visit(p_.roots()[r], sources, r, 0));
    }
    out_.tree = TreePresentation(std::move(roots));
    return std::move(out_);
  }

 private:
  PresentationNode visit(NodeId id, const std::vector<Source>& sources, std::size_t group,
                         std::uint64_t offset) {
    out_.origin.push_back(id);
    out_.origin_group.push_back(group);
    out_.copy_offset.push_back(offset);
    for (std::size_t i = 0; i < sources.size(); ++i) out_.values[i].push_back(sources[i].value);

    PresentationNode node{p_[id].weight, {}};
    const auto& tn = p_[id];
    for (std::size_t g = 0; g < tn.children.size(); ++g) {
      const NodeId child = tn.children[g];
      const Multiplicity m = p_[child].multiplicity;
      std::vector<const std::vector<ValueNode>*> explicit_lists(sources.size(), nullptr);
      std::uint64_t overridden = 0;
      for (std::size_t i = 0; i < sources.size(); ++i) {
        const ValueNode* vn = sources[i].node;
        if (vn != nullptr && g < vn->groups.size()) {
          explicit_lists[i] = &vn->groups[g].explicit_copies;
          overridden = std::max<std::uint64_t>(overridden, explicit_lists[i]->size());
        }
      }
      if (!m.is_omega() && overridden > m.count()) {
        throw std::invalid_argument("more explicit copies than the group multiplicity");
      }
      const std::uint64_t singles = m.is_omega() ? overridden : m.count();
      for (std::uint64_t k = 0; k < singles; ++k) {
        std::vector<Source> next;
        for (std::size_t i = 0; i < sources.size(); ++i) {
          const auto* list = explicit_lists[i];
          if (list != nullptr && k < list->size()) {
            next.push_back(Source{&(*list)[k], (*list)[k].value});
          } else {
            next.push_back(Source{nullptr, sources[i].value});
          }
        }
        node.groups.push_back(finite_group(visit(child, next, g, k), 1));
      }
      if (m.is_omega()) {
        std::vector<Source> tail;
        for (const auto& s : sources) tail.push_back(Source{nullptr, s.value});
        node.groups.push_back(omega_group(visit(child, tail, g, singles)));
      }
    }
    return node;
  }

  const TreePresentation& p_;
  Refinement out_;
};

}  // namespace

Refinement refine(const TreePresentation& p, std::span<const SimpleFunction> functions) {
  return Refiner(p, functions.size()).run(functions);
}

PointAddress Refinement::to_refined(const PointAddress& b) const {
  if (b.root >= tree.roots().size()) throw std::out_of_range("root index out of range");
  PointAddress out{b.root, {}};
  NodeId cur = tree.roots()[b.root];
  for (const auto& s : b.steps) {
    bool found = false;
    const auto& children = tree[cur].children;
    for (std::size_t g = 0; g < children.size() && !found; ++g) {
      const NodeId c = children[g];
      if (origin_group[c] != s.group) continue;
      if (tree[c].multiplicity.is_omega()) {
        if (s.copy >= copy_offset[c]) {
          out.steps.push_back(Step{g, s.copy - copy_offset[c]});
          cur = c;
          found = true;
        }
      } else if (s.copy == copy_offset[c]) {
        out.steps.push_back(Step{g, 0});
        cur = c;
        found = true;
      }
    }
    if (!found) throw std::out_of_range("address does not exist: " + to_string(b));
  }
  return out;
}

PointAddress Refinement::to_original(const PointAddress& b) const {
  PointAddress out{b.root, {}};
  if (b.root >= tree.roots().size()) throw std::out_of_range("root index out of range");
  NodeId cur = tree.roots()[b.root];
  for (const auto& s : b.steps) {
    const NodeId c = tree.child(cur, s.group);
    const std::uint64_t copy = copy_offset[c] + (tree[c].multiplicity.is_omega() ? s.copy : 0);
    out.steps.push_back(Step{origin_group[c], copy});
    cur = c;
  }
  return out;
}

WeightAssignment Refinement::lift(const WeightAssignment& w) const {
  std::vector<Rational> lifted;
  lifted.reserve(tree.size());
  for (NodeId n = 0; n < tree.size(); ++n) lifted.push_back(w[origin[n]]);
  return WeightAssignment(tree, std::move(lifted));
}

namespace {

bool constant_below(const TreePresentation& t, std::span<const Rational> values, NodeId id,
                    const Rational& value) {
  for (NodeId n = id; n < t.subtree_end(id); ++n) {
    if (values[n] != value) return false;
  }
  return true;
}

ValueNode lower_node(const Refinement& r, const TreePresentation& original,
                     std::span<const Rational> values, NodeId id) {
  ValueNode out{values[id], {}};
  const NodeId orig = r.origin[id];
  out.groups.resize(original[orig].children.size());
  for (NodeId c : r.tree[id].children) {
    auto& list = out.groups.at(r.origin_group[c]).explicit_copies;
    if (r.tree[c].multiplicity.is_omega()) {
      if (!constant_below(r.tree, values, c, values[id])) {
        throw std::logic_error("value is not constant on an omega tail");
      }
      continue;
    }
    if (list.size() != r.copy_offset[c]) throw std::logic_error("single copies out of order");
    list.push_back(lower_node(r, original, values, c));
  }
  // Trailing copies equal to the inherited value carry no information.
  for (NodeId c : r.tree[id].children) {
    auto& list = out.groups[r.origin_group[c]].explicit_copies;
    while (!list.empty() && !r.tree[c].multiplicity.is_omega()) {
      const auto& last = list.back();
      if (last.value != out.value || !last.groups.empty()) break;
      list.pop_back();
    }
  }
  while (!out.groups.empty() && out.groups.back().explicit_copies.empty()) out.groups.pop_back();
  return out;
}

}  // namespace

SimpleFunction Refinement::lower(const TreePresentation& original, std::span<const Rational> values) const {
  if (values.size() != tree.size()) throw std::invalid_argument("one value per refined template required");
  SimpleFunction f;
  for (NodeId r : tree.roots()) f.roots.push_back(lower_node(*this, original, values, r));
  return f;
}

}  // namespace treespace
