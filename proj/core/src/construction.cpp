#include "treespace/construction.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "treespace/fragmentation.hpp"
#include "treespace/topo_indices.hpp"

namespace treespace {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

bool omega_between(const TreePresentation& r, NodeId ancestor, NodeId id) {
  for (NodeId x = id; x != ancestor && x != kNoNode; x = r[x].parent) {
    if (r[x].multiplicity.is_omega()) return true;
  }
  return false;
}

// Canonical minimal exclusion set: most distant successors first, then drop
// whatever turns out to be redundant, scanning in presentation order.
std::vector<std::size_t> canonical_exclusion(const TreePresentation& r, const MarkingGeometry& geo, NodeId id,
                                             const Rational& epsilon) {
  const auto& children = r[id].children;
  std::vector<std::size_t> order;
  for (std::size_t g = 0; g < children.size(); ++g) {
    if (!r[children[g]].multiplicity.is_omega()) order.push_back(g);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = geo.reach(children[a]);
    const auto& rb = geo.reach(children[b]);
    if (!rb) return ra.has_value();
    return ra && *ra > *rb;
  });
  std::vector<std::uint64_t> counts(children.size(), 0);
  std::vector<std::size_t> chosen;
  for (std::size_t g : order) {
    if (geo.diameter(id, counts) < epsilon) break;
    counts[g] = 1;
    chosen.push_back(g);
  }
  if (!(geo.diameter(id, counts) < epsilon)) {
    throw std::logic_error("no exclusion set shrinks the neighbourhood below epsilon at " +
                           template_label(r, id));
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<std::size_t> kept;
  for (std::size_t g : chosen) {
    counts[g] = 0;
    if (geo.diameter(id, counts) < epsilon) continue;
    counts[g] = 1;
    kept.push_back(g);
  }
  return kept;
}

struct RawNode {
  NodeId source;
  std::vector<std::size_t> excluded;
  std::size_t alpha;
  std::size_t parent = kNone;
};

}  // namespace

ClopenDescriptor ConstructionTree::descriptor(const ConstructionInstance& m) const {
  ClopenDescriptor c{m.root, {}};
  for (std::size_t g : nodes.at(m.node).excluded) c.excluded.push_back(Step{g, 0});
  return c;
}

ClopenDescriptor ConstructionTree::original_descriptor(const ConstructionInstance& m) const {
  ClopenDescriptor c{source.to_original(m.root), {}};
  const NodeId src = nodes.at(m.node).source;
  for (std::size_t g : nodes.at(m.node).excluded) {
    const NodeId child = source.tree.child(src, g);
    c.excluded.push_back(Step{source.origin_group[child], source.copy_offset[child]});
  }
  return c;
}

ConstructionInstance ConstructionTree::canonical_instance(std::size_t node) const {
  return ConstructionInstance{node, first_instance(source.tree, nodes.at(node).source)};
}

ConstructionShape shape(const ConstructionTree& n) {
  const auto& r = n.source.tree;
  const std::size_t count = n.nodes.size();
  std::vector<std::size_t> parents(count, kNone);
  std::vector<bool> is_root(count, false);
  for (std::size_t root : n.roots) {
    if (root >= count || is_root[root]) throw std::logic_error("invalid or repeated root");
    is_root[root] = true;
    if (omega_between(r, kNoNode, n.nodes[root].source)) {
      throw std::logic_error("initial node repeats along an ω-group");
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (n.nodes[i].source >= r.size()) throw std::logic_error("node source out of range");
    for (std::size_t c : n.nodes[i].children) {
      if (c >= count || is_root[c] || parents[c] != kNone) {
        throw std::logic_error("construction nodes do not form a forest");
      }
      parents[c] = i;
    }
  }
  ConstructionShape out;
  out.template_of_node.assign(count, kNoNode);
  std::vector<bool> on_stack(count, false);
  std::function<PresentationNode(std::size_t)> build = [&](std::size_t i) {
    on_stack[i] = true;
    out.node_of.push_back(i);
    out.template_of_node[i] = out.node_of.size() - 1;
    PresentationNode node;
    for (std::size_t c : n.nodes[i].children) {
      if (on_stack[c]) throw std::logic_error("construction nodes contain a cycle");
      const NodeId from = n.nodes[i].source;
      const NodeId to = n.nodes[c].source;
      if (!r.is_ancestor_or_self(from, to)) {
        throw std::logic_error("child descriptor root is not below its parent's");
      }
      const bool omega = omega_between(r, from, to);
      PresentationNode sub = build(c);
      node.groups.push_back(omega ? omega_group(std::move(sub)) : finite_group(std::move(sub), 1));
    }
    on_stack[i] = false;
    return node;
  };
  std::vector<PresentationNode> roots;
  for (std::size_t root : n.roots) roots.push_back(build(root));
  if (out.node_of.size() != count) throw std::logic_error("construction node unreachable from the roots");
  out.tree = TreePresentation(std::move(roots));
  return out;
}

ConstructionTree build_construction_tree(const TreePresentation& p, const WeightAssignment& w,
                                         const Rational& epsilon) {
  Refinement r = refine(p, {});
  WeightAssignment lifted = r.lift(w);
  return build_construction_tree(std::move(r), lifted, epsilon);
}

ConstructionTree build_construction_tree(Refinement source, const WeightAssignment& refined_weights,
                                         const Rational& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  const TreePresentation& r = source.tree;
  for (const auto& tn : r.nodes()) {
    if (!tn.multiplicity.is_omega() && tn.multiplicity.count() != 1) {
      throw std::invalid_argument("construction needs finite groups split into single copies");
    }
  }
  auto seq = derivation_sequence(r, refined_weights, epsilon, TemplateMarking::full(r));
  if (!seq.back().is_empty()) {
    throw std::domain_error("fragmentation index is infinite at this scale");
  }
  const std::size_t eta = seq.size() - 2;
  std::vector<MarkingGeometry> geo;
  geo.reserve(eta + 1);
  for (std::size_t i = 0; i <= eta; ++i) geo.emplace_back(r, refined_weights, seq[i]);

  std::vector<std::size_t> alpha(r.size(), 0);
  for (NodeId t = 0; t < r.size(); ++t) {
    while (alpha[t] + 1 <= eta && seq[alpha[t] + 1][t]) ++alpha[t];
  }

  std::vector<std::size_t> alpha_one(r.size(), kNone);
  std::vector<std::optional<std::vector<std::size_t>>> type_two(r.size());
  for (NodeId t = 0; t < r.size(); ++t) {
    const std::size_t a = alpha[t];
    bool chosen = false;
    for (NodeId s : r.template_path(t)) {
      if (geo[a].cone_diameter(s) < epsilon) {
        if (alpha_one[s] != kNone && alpha_one[s] != a) {
          throw std::logic_error("inconsistent level for " + template_label(r, s));
        }
        alpha_one[s] = a;
        chosen = true;
        break;
      }
    }
    if (!chosen) type_two[t] = canonical_exclusion(r, geo[a], t, epsilon);
  }

  std::vector<RawNode> raw;
  std::vector<std::size_t> raw_one(r.size(), kNone), raw_two(r.size(), kNone);
  for (NodeId t = 0; t < r.size(); ++t) {
    if (alpha_one[t] != kNone) {
      raw_one[t] = raw.size();
      raw.push_back(RawNode{t, {}, alpha_one[t]});
    }
    if (type_two[t]) {
      raw_two[t] = raw.size();
      raw.push_back(RawNode{t, *type_two[t], alpha[t]});
    }
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const NodeId s = raw[i].source;
    if (!raw[i].excluded.empty() && raw_one[s] != kNone) {
      raw[i].parent = raw_one[s];
      continue;
    }
    NodeId toward = s;
    for (NodeId a = r[s].parent; a != kNoNode; toward = a, a = r[a].parent) {
      const std::size_t g = r[toward].group;
      if (raw_two[a] != kNone) {
        const auto& ex = raw[raw_two[a]].excluded;
        if (std::find(ex.begin(), ex.end(), g) == ex.end()) {
          raw[i].parent = raw_two[a];
          break;
        }
      }
      if (raw_one[a] != kNone) {
        raw[i].parent = raw_one[a];
        break;
      }
    }
  }

  // Renumber in preorder of 𝒩 so node ids match the shape's template ids.
  std::vector<std::vector<std::size_t>> kids(raw.size());
  std::vector<std::size_t> raw_roots;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    (raw[i].parent == kNone ? raw_roots : kids[raw[i].parent]).push_back(i);
  }
  std::vector<std::size_t> order;
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    order.push_back(i);
    for (std::size_t c : kids[i]) visit(c);
  };
  for (std::size_t i : raw_roots) visit(i);
  std::vector<std::size_t> renamed(raw.size());
  for (std::size_t k = 0; k < order.size(); ++k) renamed[order[k]] = k;

  ConstructionTree out;
  out.nodes.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto& node = out.nodes[renamed[i]];
    node.source = raw[i].source;
    node.excluded = raw[i].excluded;
    node.alpha = raw[i].alpha;
    for (std::size_t c : kids[i]) node.children.push_back(renamed[c]);
  }
  for (std::size_t i : raw_roots) out.roots.push_back(renamed[i]);
  geo.clear();
  out.source = std::move(source);
  out.weights = refined_weights;
  out.epsilon = epsilon;
  out.derivation = std::move(seq);
  return out;
}

ConstructionInstance quotient_map_refined(const ConstructionTree& n, const PointAddress& b) {
  const auto& r = n.source.tree;
  const auto path = template_path_of(r, b);
  const std::vector<std::size_t>* candidates = &n.roots;
  std::optional<ConstructionInstance> current;
  for (;;) {
    bool found = false;
    for (std::size_t c : *candidates) {
      const NodeId src = n.nodes.at(c).source;
      const std::size_t d = r[src].depth;
      if (d >= path.size() || path[d] != src) continue;
      ConstructionInstance m{c, b.prefix(d)};
      if (member(n.descriptor(m), b)) {
        current = std::move(m);
        candidates = &n.nodes[c].children;
        found = true;
        break;
      }
    }
    if (!found) break;
  }
  if (!current) throw std::domain_error("point " + to_string(b) + " lies in no element of the construction");
  return *current;
}

ConstructionInstance quotient_map(const ConstructionTree& n, const PointAddress& b) {
  return quotient_map_refined(n, n.source.to_refined(b));
}

std::optional<PointAddress> tilde_witness(const ConstructionTree& n, std::size_t node) {
  const auto& r = n.source.tree;
  const ConstructionInstance m = n.canonical_instance(node);
  const ClopenDescriptor desc = n.descriptor(m);
  std::optional<PointAddress> found;
  std::function<void(const PointAddress&, NodeId)> search = [&](const PointAddress& x, NodeId t) {
    if (found || !member(desc, x)) return;
    if (quotient_map_refined(n, x) == m) {
      found = x;
      return;
    }
    for (std::size_t g = 0; g < r[t].children.size() && !found; ++g) {
      search(x.child(g, 0), r[t].children[g]);
    }
  };
  search(m.root, n.nodes.at(node).source);
  return found;
}

Ordinal construction_index_bound(std::size_t eta) {
  return Ordinal(static_cast<std::uint64_t>(2 * eta + 2));
}

namespace {

// Every element of 𝒩 whose copy indices stay below the bound, with the
// instance-level parent relation.
struct InstanceTable {
  std::vector<ConstructionInstance> items;
  std::vector<std::size_t> parent;
  std::vector<std::vector<std::size_t>> children;
  std::map<PointAddress, std::vector<std::size_t>> by_root;
  std::map<ConstructionInstance, std::size_t> index;
};

std::vector<PointAddress> expand(const TreePresentation& r, const PointAddress& from, NodeId from_template,
                                 NodeId to_template, std::uint64_t bound) {
  std::vector<NodeId> path;
  for (NodeId x = to_template; x != from_template; x = r[x].parent) {
    if (x == kNoNode) return {};
    path.push_back(x);
  }
  std::reverse(path.begin(), path.end());
  std::vector<PointAddress> out{from};
  for (NodeId x : path) {
    std::vector<PointAddress> next;
    for (const auto& a : out) {
      for (std::uint64_t k = 0; k < r[x].multiplicity.truncated(bound); ++k) next.push_back(a.child(r[x].group, k));
    }
    out = std::move(next);
  }
  return out;
}

InstanceTable instantiate(const ConstructionTree& n, std::uint64_t bound) {
  const auto& r = n.source.tree;
  InstanceTable t;
  std::function<void(std::size_t, const PointAddress&, std::size_t)> add = [&](std::size_t node,
                                                                              const PointAddress& root,
                                                                              std::size_t parent) {
    const std::size_t id = t.items.size();
    t.items.push_back(ConstructionInstance{node, root});
    t.parent.push_back(parent);
    t.children.emplace_back();
    if (parent != kNone) t.children[parent].push_back(id);
    t.by_root[root].push_back(id);
    t.index[t.items.back()] = id;
    const NodeId src = n.nodes[node].source;
    for (std::size_t c : n.nodes[node].children) {
      for (const auto& a : expand(r, root, src, n.nodes[c].source, bound)) add(c, a, id);
    }
  };
  for (std::size_t root : n.roots) {
    const NodeId src = n.nodes[root].source;
    const NodeId top = r.roots()[r[src].root];
    for (const auto& a : expand(r, PointAddress{r[src].root, {}}, top, src, bound)) add(root, a, kNone);
  }
  return t;
}

std::vector<std::size_t> chain_of(const ConstructionTree& n, const InstanceTable& t, const PointAddress& x) {
  std::vector<std::size_t> chain;
  for (std::size_t len = 0; len <= x.depth(); ++len) {
    const auto it = t.by_root.find(x.prefix(len));
    if (it == t.by_root.end()) continue;
    for (std::size_t i : it->second) {
      if (member(n.descriptor(t.items[i]), x)) chain.push_back(i);
    }
  }
  return chain;
}

std::string describe(const ConstructionTree& n, const ConstructionInstance& m) {
  std::ostringstream s;
  s << "node " << m.node << " at " << to_string(n.descriptor(m));
  return s.str();
}

Check make_check(std::string name, const std::vector<std::string>& failures) {
  Check c{std::move(name), failures.empty(), {}};
  if (!failures.empty()) {
    c.detail = failures.front();
    if (failures.size() > 1) c.detail += " (+" + std::to_string(failures.size() - 1) + " more)";
  }
  return c;
}

bool structurally_inside(const ConstructionTree& n, std::size_t parent, std::size_t child) {
  const auto& r = n.source.tree;
  const auto& P = n.nodes[parent];
  const auto& C = n.nodes[child];
  if (P.source == C.source) return P.excluded.empty() && !C.excluded.empty();
  if (!r.is_ancestor_or_self(P.source, C.source)) return false;
  NodeId toward = C.source;
  while (r[toward].parent != P.source) toward = r[toward].parent;
  const std::size_t g = r[toward].group;
  return std::find(P.excluded.begin(), P.excluded.end(), g) == P.excluded.end();
}

}  // namespace

std::vector<Check> verify_construction(const ConstructionTree& n, std::uint64_t copy_bound) {
  if (copy_bound < 2) throw std::invalid_argument("copy bound must be at least 2");
  const auto& r = n.source.tree;
  std::vector<Check> checks;

  // Structure: finite forest, strict containment along edges, no repeated
  // initial nodes.
  std::vector<std::string> roots_bad;
  for (std::size_t root : n.roots) {
    if (root < n.nodes.size() && omega_between(r, kNoNode, n.nodes[root].source)) {
      roots_bad.push_back("initial node " + std::to_string(root) + " repeats along an ω-group");
    }
  }
  std::optional<ConstructionShape> sh;
  std::vector<std::string> forest_bad;
  try {
    if (roots_bad.empty()) sh = shape(n);
  } catch (const std::logic_error& e) {
    forest_bad.push_back(e.what());
  }
  if (sh) {
    for (std::size_t i = 0; i < n.nodes.size(); ++i) {
      for (std::size_t c : n.nodes[i].children) {
        if (!structurally_inside(n, i, c)) {
          forest_bad.push_back("child " + std::to_string(c) + " is not strictly inside node " + std::to_string(i));
        }
      }
    }
  }
  checks.push_back(make_check("finitely_many_initial_nodes", roots_bad));
  checks.push_back(make_check("well_founded", forest_bad));
  if (!roots_bad.empty() || !forest_bad.empty()) {
    for (const char* name : {"trichotomy", "cover", "tilde_partition", "tilde_diameter", "index_bound",
                             "alpha_labels", "alpha_descent"}) {
      checks.push_back(Check{name, false, "construction tree is malformed"});
    }
    return checks;
  }

  const InstanceTable table = instantiate(n, copy_bound);
  const auto points = enumerate_points(r, copy_bound);
  std::vector<std::size_t> size(table.items.size(), 0);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> together;
  std::vector<std::string> cover_bad, tilde_bad;
  std::vector<std::vector<std::size_t>> owned(table.items.size());
  for (std::size_t xi = 0; xi < points.size(); ++xi) {
    const auto& x = points[xi];
    const auto chain = chain_of(n, table, x);
    if (chain.empty()) {
      cover_bad.push_back("point " + to_string(x) + " is uncovered");
      continue;
    }
    const std::set<std::size_t> in_chain(chain.begin(), chain.end());
    std::vector<std::size_t> owners;
    for (std::size_t m : chain) {
      ++size[m];
      for (std::size_t o : chain) {
        if (o != m) ++together[{m, o}];
      }
      bool minimal = true;
      for (std::size_t c : table.children[m]) minimal = minimal && !in_chain.contains(c);
      if (minimal) owners.push_back(m);
    }
    if (owners.size() != 1) {
      tilde_bad.push_back("point " + to_string(x) + " lies in " + std::to_string(owners.size()) + " sets M̃");
    } else {
      owned[owners.front()].push_back(xi);
    }
  }
  for (std::size_t m = 0; m < table.items.size(); ++m) {
    if (n.nodes[table.items[m].node].children.empty()) continue;
    bool nonempty = !owned[m].empty();
    if (!nonempty) tilde_bad.push_back("M̃ is empty for " + describe(n, table.items[m]));
  }

  std::vector<std::string> tri_bad;
  auto is_instance_ancestor = [&](std::size_t a, std::size_t d) {
    for (std::size_t x = table.parent[d]; x != kNone; x = table.parent[x]) {
      if (x == a) return true;
    }
    return false;
  };
  for (const auto& [pair, common] : together) {
    const auto [m, o] = pair;
    const bool m_in_o = common == size[m];
    const bool o_in_m = common == size[o];
    if (m_in_o && o_in_m) {
      tri_bad.push_back("two elements coincide: " + describe(n, table.items[m]) + ", " + describe(n, table.items[o]));
    } else if (!m_in_o && !o_in_m) {
      tri_bad.push_back("elements overlap without nesting: " + describe(n, table.items[m]) + ", " +
                        describe(n, table.items[o]));
    } else if (m_in_o && !is_instance_ancestor(o, m)) {
      tri_bad.push_back("inclusion disagrees with the tree order: " + describe(n, table.items[m]) + " ⊂ " +
                        describe(n, table.items[o]));
    }
  }
  for (std::size_t m = 0; m < table.items.size(); ++m) {
    if (size[m] == 0) tri_bad.push_back("empty element " + describe(n, table.items[m]));
  }
  checks.push_back(make_check("trichotomy", tri_bad));
  checks.push_back(make_check("cover", cover_bad));
  checks.push_back(make_check("tilde_partition", tilde_bad));

  std::vector<std::string> diam_bad;
  for (std::size_t m = 0; m < table.items.size(); ++m) {
    // Ultrametric: the largest distance from any one member is the diameter.
    Rational diam = 0;
    for (std::size_t j = 1; j < owned[m].size(); ++j) {
      const Rational d = distance(r, n.weights, points[owned[m][0]], points[owned[m][j]]);
      if (d > diam) diam = d;
    }
    if (!(diam < n.epsilon)) {
      diam_bad.push_back("diam M̃ = " + format_rational(diam) + " for " + describe(n, table.items[m]));
    }
  }
  checks.push_back(make_check("tilde_diameter", diam_bad));

  const std::size_t eta = n.eta();
  const Ordinal o = ordinal_index(sh->tree);
  const Ordinal bound = construction_index_bound(eta);
  Check index{"index_bound", o <= bound, "o(N) = " + to_string(o) + ", bound " + to_string(bound)};
  checks.push_back(index);

  std::vector<std::string> label_bad;
  std::vector<MarkingGeometry> geometry;
  for (const auto& level : n.derivation) geometry.emplace_back(r, n.weights, level);
  for (std::size_t i = 0; i < n.nodes.size(); ++i) {
    const ClopenDescriptor desc = n.descriptor(n.canonical_instance(i));
    std::optional<std::size_t> top, first_small;
    for (std::size_t beta = 0; beta < n.derivation.size(); ++beta) {
      if (beta <= eta && intersects(r, desc, n.derivation[beta])) top = beta;
      if (!first_small && clopen_diam(r, desc, geometry[beta]) < n.epsilon) first_small = beta;
    }
    if (!top || *top != n.nodes[i].alpha || !first_small || *first_small != n.nodes[i].alpha) {
      label_bad.push_back("node " + std::to_string(i) + " labelled " + std::to_string(n.nodes[i].alpha) +
                          ", meets up to " + (top ? std::to_string(*top) : "none") + ", small from " +
                          (first_small ? std::to_string(*first_small) : "none"));
    }
  }
  checks.push_back(make_check("alpha_labels", label_bad));

  std::vector<std::size_t> parent(n.nodes.size(), kNone);
  for (std::size_t i = 0; i < n.nodes.size(); ++i) {
    for (std::size_t c : n.nodes[i].children) parent[c] = i;
  }
  std::vector<std::string> descent_bad;
  for (std::size_t i = 0; i < n.nodes.size(); ++i) {
    const std::size_t up = parent[i];
    if (up == kNone) continue;
    if (n.nodes[up].alpha < n.nodes[i].alpha) {
      descent_bad.push_back("node " + std::to_string(i) + " has a higher level than its parent");
    }
    for (std::size_t a = parent[up]; a != kNone; a = parent[a]) {
      if (!(n.nodes[a].alpha > n.nodes[i].alpha)) {
        descent_bad.push_back("node " + std::to_string(i) + " and ancestor " + std::to_string(a) +
                              " at distance ≥ 2 share level " + std::to_string(n.nodes[i].alpha));
      }
    }
  }
  checks.push_back(make_check("alpha_descent", descent_bad));
  return checks;
}

std::vector<Check> verify_quotient(const ConstructionTree& n, std::uint64_t copy_bound) {
  if (copy_bound < 2) throw std::invalid_argument("copy bound must be at least 2");
  std::vector<std::string> onto_bad, preimage_bad;
  try {
    for (std::size_t i = 0; i < n.nodes.size(); ++i) {
      if (!tilde_witness(n, i)) onto_bad.push_back("no point maps to node " + std::to_string(i));
    }
    const InstanceTable table = instantiate(n, copy_bound);
    for (const auto& x : enumerate_points(n.source.tree, copy_bound)) {
      const ConstructionInstance q = quotient_map_refined(n, x);
      const auto it = table.index.find(q);
      if (it == table.index.end()) {
        preimage_bad.push_back("q(" + to_string(x) + ") is not an element of the construction");
        continue;
      }
      std::set<std::size_t> above;
      for (std::size_t a = it->second; a != kNone; a = table.parent[a]) above.insert(a);
      const auto chain = chain_of(n, table, x);
      if (std::set<std::size_t>(chain.begin(), chain.end()) != above) {
        preimage_bad.push_back("elements containing " + to_string(x) + " differ from the ancestors of q(x)");
      }
    }
  } catch (const std::exception& e) {
    preimage_bad.push_back(e.what());
  }
  return {make_check("surjectivity", onto_bad), make_check("preimage_identity", preimage_bad)};
}

}  // namespace treespace
