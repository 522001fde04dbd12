#include "treespace/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace treespace {

PresentationNode leaf(std::optional<Rational> weight) { return PresentationNode{std::move(weight), {}}; }

PresentationNode branch(std::vector<ChildGroup> groups, std::optional<Rational> weight) {
  return PresentationNode{std::move(weight), std::move(groups)};
}

ChildGroup omega_group(PresentationNode templ) {
  return ChildGroup{std::move(templ), Multiplicity::omega()};
}

ChildGroup finite_group(PresentationNode templ, std::uint64_t copies) {
  return ChildGroup{std::move(templ), Multiplicity::finite(copies)};
}

TreePresentation::TreePresentation(std::vector<PresentationNode> roots) {
  for (std::size_t r = 0; r < roots.size(); ++r) {
    roots_.push_back(flatten(roots[r], kNoNode, r, r, Multiplicity::finite(1), 0));
  }
}

NodeId TreePresentation::flatten(const PresentationNode& node, NodeId parent, std::size_t root,
                                 std::size_t group, Multiplicity multiplicity, std::size_t depth) {
  const NodeId id = nodes_.size();
  nodes_.push_back(TemplateNode{parent, root, group, multiplicity, depth, node.weight, {}});
  subtree_end_.push_back(id + 1);
  for (std::size_t g = 0; g < node.groups.size(); ++g) {
    const auto& cg = node.groups[g];
    const NodeId c = flatten(cg.templ, id, root, g, cg.multiplicity, depth + 1);
    nodes_[id].children.push_back(c);
  }
  subtree_end_[id] = nodes_.size();
  return id;
}

bool TreePresentation::is_ancestor_or_self(NodeId ancestor, NodeId id) const {
  return ancestor <= id && id < subtree_end_.at(ancestor);
}

std::vector<NodeId> TreePresentation::template_path(NodeId id) const {
  std::vector<NodeId> path;
  for (NodeId cur = id; cur != kNoNode; cur = nodes_.at(cur).parent) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  return path;
}

std::span<const TemplateNode> TreePresentation::subtree(NodeId id) const {
  return std::span<const TemplateNode>(nodes_).subspan(id, subtree_end_.at(id) - id);
}

std::size_t TreePresentation::max_depth() const noexcept {
  std::size_t d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.depth);
  return d;
}

PresentationNode TreePresentation::rebuild(NodeId id) const {
  PresentationNode out{nodes_[id].weight, {}};
  for (NodeId c : nodes_[id].children) {
    out.groups.push_back(ChildGroup{rebuild(c), nodes_[c].multiplicity});
  }
  return out;
}

std::vector<PresentationNode> TreePresentation::to_term() const {
  std::vector<PresentationNode> out;
  for (NodeId r : roots_) out.push_back(rebuild(r));
  return out;
}

PointAddress PointAddress::child(std::size_t group, std::uint64_t copy) const {
  PointAddress out = *this;
  out.steps.push_back(Step{group, copy});
  return out;
}

PointAddress PointAddress::prefix(std::size_t length) const {
  PointAddress out{root, {}};
  out.steps.assign(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(std::min(length, steps.size())));
  return out;
}

bool PointAddress::extends(const PointAddress& prefix) const {
  return root == prefix.root && prefix.steps.size() <= steps.size() &&
         std::equal(prefix.steps.begin(), prefix.steps.end(), steps.begin());
}

std::vector<Diagnostic> validate(const TreePresentation& p) {
  std::vector<Diagnostic> out;
  if (p.roots().empty()) out.push_back({"", "no roots"});
  for (NodeId id = 0; id < p.size(); ++id) {
    const auto& n = p[id];
    if (n.parent != kNoNode && !n.multiplicity.is_omega() && n.multiplicity.count() == 0) {
      out.push_back({template_label(p, id), "empty group"});
    }
    if (n.weight && *n.weight < 0) out.push_back({template_label(p, id), "negative weight"});
  }
  return out;
}

std::vector<NodeId> template_path_of(const TreePresentation& p, const PointAddress& b) {
  if (b.root >= p.roots().size()) throw std::out_of_range("root index out of range: " + to_string(b));
  std::vector<NodeId> path{p.roots()[b.root]};
  for (const auto& s : b.steps) {
    const auto& n = p[path.back()];
    if (s.group >= n.children.size()) throw std::out_of_range("group index out of range: " + to_string(b));
    const NodeId c = n.children[s.group];
    if (!p[c].multiplicity.admits(s.copy)) throw std::out_of_range("copy index out of range: " + to_string(b));
    path.push_back(c);
  }
  return path;
}

NodeId template_of(const TreePresentation& p, const PointAddress& b) {
  return template_path_of(p, b).back();
}

bool is_valid_address(const TreePresentation& p, const PointAddress& b) {
  try {
    template_path_of(p, b);
    return true;
  } catch (const std::out_of_range&) {
    return false;
  }
}

namespace {

void enumerate_from(const TreePresentation& p, NodeId id, PointAddress& cur, std::uint64_t bound,
                    std::vector<PointAddress>& out) {
  out.push_back(cur);
  const auto& n = p[id];
  for (std::size_t g = 0; g < n.children.size(); ++g) {
    const NodeId c = n.children[g];
    const std::uint64_t copies = p[c].multiplicity.truncated(bound);
    for (std::uint64_t k = 0; k < copies; ++k) {
      cur.steps.push_back(Step{g, k});
      enumerate_from(p, c, cur, bound, out);
      cur.steps.pop_back();
    }
  }
}

}  // namespace

std::vector<PointAddress> enumerate_points(const TreePresentation& p, std::uint64_t copy_bound) {
  if (copy_bound == 0) throw std::invalid_argument("copy bound must be at least 1");
  std::vector<PointAddress> out;
  for (std::size_t r = 0; r < p.roots().size(); ++r) {
    PointAddress cur{r, {}};
    enumerate_from(p, p.roots()[r], cur, copy_bound, out);
  }
  return out;
}

std::vector<PointAddress> enumerate_points_below(const TreePresentation& p, const PointAddress& top,
                                                 std::uint64_t copy_bound) {
  if (copy_bound == 0) throw std::invalid_argument("copy bound must be at least 1");
  std::vector<PointAddress> out;
  PointAddress cur = top;
  enumerate_from(p, template_of(p, top), cur, copy_bound, out);
  return out;
}

TreePresentation cantor_tree(std::size_t depth) {
  PresentationNode node = leaf();
  for (std::size_t level = 0; level < depth; ++level) node = branch({omega_group(std::move(node))});
  std::vector<PresentationNode> roots;
  roots.push_back(std::move(node));
  return TreePresentation(std::move(roots));
}

std::string template_label(const TreePresentation& p, NodeId id) {
  const auto path = p.template_path(id);
  std::string out = "r" + std::to_string(p[path.front()].root);
  for (std::size_t i = 1; i < path.size(); ++i) out += "." + std::to_string(p[path[i]].group);
  return out;
}

std::string to_string(const PointAddress& b) {
  std::string out = "r" + std::to_string(b.root);
  for (const auto& s : b.steps) out += "/" + std::to_string(s.group) + ":" + std::to_string(s.copy);
  return out;
}

PointAddress first_instance(const TreePresentation& p, NodeId id) {
  const auto path = p.template_path(id);
  PointAddress a{p[id].root, {}};
  for (std::size_t i = 1; i < path.size(); ++i) a.steps.push_back(Step{p[path[i]].group, 0});
  return a;
}

}  // namespace treespace
