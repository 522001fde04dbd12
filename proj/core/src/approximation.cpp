#include "treespace/approximation.hpp"

#include <algorithm>
#include <stdexcept>

#include "treespace/refinement.hpp"
#include "treespace/topo_indices.hpp"

namespace treespace {

PipelineReport construction_report(const ConstructionTree& n, std::uint64_t copy_bound) {
  PipelineReport r;
  r.epsilon = n.epsilon;
  const std::size_t eta = n.eta();
  r.eta = Ordinal(static_cast<std::uint64_t>(eta));
  r.lambda = Ordinal();
  r.n = Natural(static_cast<unsigned long>(eta));
  r.bound = construction_index_bound(eta);
  r.checks = verify_construction(n, copy_bound);
  for (auto& c : verify_quotient(n, copy_bound)) r.checks.push_back(std::move(c));
  try {
    r.o_n = ordinal_index(shape(n).tree);
  } catch (const std::logic_error&) {
    r.o_n = Ordinal();
  }
  return r;
}

SimpleFunction uniform_approximation(const TreePresentation& shape, std::span<const Rational> f1,
                                     const Rational& epsilon) {
  if (epsilon < 0) throw std::invalid_argument("epsilon must be non-negative");
  if (f1.size() != shape.size()) throw std::invalid_argument("one value per node required");
  // Oscillation over the node and its ω-subtrees, bottom-up.
  std::vector<Rational> lo(f1.begin(), f1.end()), hi(f1.begin(), f1.end());
  std::vector<Rational> sub_lo(lo), sub_hi(hi);
  for (NodeId id = shape.size(); id-- > 0;) {
    for (NodeId c : shape[id].children) {
      if (sub_lo[c] < sub_lo[id]) sub_lo[id] = sub_lo[c];
      if (sub_hi[c] > sub_hi[id]) sub_hi[id] = sub_hi[c];
      if (!shape[c].multiplicity.is_omega()) continue;
      if (sub_lo[c] < lo[id]) lo[id] = sub_lo[c];
      if (sub_hi[c] > hi[id]) hi[id] = sub_hi[c];
    }
    if (hi[id] - lo[id] > epsilon) {
      throw std::invalid_argument("oscillation exceeds epsilon near " + template_label(shape, id));
    }
  }
  std::vector<Rational> values(shape.size());
  std::vector<bool> piece_top(shape.size(), false);
  for (NodeId id = 0; id < shape.size(); ++id) {
    const NodeId up = shape[id].parent;
    piece_top[id] = up == kNoNode || (piece_top[up] && !shape[id].multiplicity.is_omega());
    values[id] = piece_top[id] ? f1[id] : values[up];
  }
  return refine(shape, {}).lower(shape, values);
}

Approximation approximate(const TreePresentation& p, const WeightAssignment& w, const SimpleFunction& g,
                          const Rational& epsilon, std::uint64_t copy_bound) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  if (const auto diags = validate(p, g); !diags.empty()) {
    throw std::invalid_argument("function does not fit the tree: " + diags.front().message);
  }
  const auto lipschitz = lipschitz_bound(p, g, w);
  if (!lipschitz) throw std::domain_error("function has no finite Lipschitz bound");
  const Rational scale = std::max(Rational(1), *lipschitz);
  const Rational half = epsilon / 2;

  const SimpleFunction functions[] = {g};
  Refinement refined = refine(p, functions);
  const WeightAssignment refined_weights = refined.lift(w);
  const std::vector<Rational> g_values = refined.values.front();

  Approximation out;
  out.construction = build_construction_tree(std::move(refined), refined_weights, half);
  const ConstructionTree& n = out.construction;
  const auto& rt = n.source.tree;
  const ConstructionShape sh = shape(n);
  std::vector<Check> extra;

  out.f1.resize(n.nodes.size());
  std::vector<Rational> f1_by_template(n.nodes.size());
  for (std::size_t i = 0; i < n.nodes.size(); ++i) {
    const auto x = tilde_witness(n, i);
    if (!x) throw std::logic_error("construction node with empty M̃");
    out.f1[i] = g_values[template_of(rt, *x)];
    f1_by_template[sh.template_of_node[i]] = out.f1[i];
  }
  const SimpleFunction f = uniform_approximation(sh.tree, f1_by_template, scale * half);
  out.f.resize(n.nodes.size());
  for (std::size_t i = 0; i < n.nodes.size(); ++i) {
    out.f[i] = evaluate(f, first_instance(sh.tree, sh.template_of_node[i]));
  }

  // Everything is uniform over copies, so one instance per refined template
  // decides both y and the oscillation of g on each M̃.
  std::vector<Rational> y_values(rt.size());
  std::vector<std::optional<std::pair<Rational, Rational>>> range(n.nodes.size());
  for (NodeId t = 0; t < rt.size(); ++t) {
    const std::size_t node = quotient_map_refined(n, first_instance(rt, t)).node;
    y_values[t] = out.f[node];
    auto& r = range[node];
    if (!r) r.emplace(g_values[t], g_values[t]);
    r->first = std::min(r->first, Rational(g_values[t]));
    r->second = std::max(r->second, Rational(g_values[t]));
  }
  out.y = n.source.lower(p, y_values);

  Check osc{"oscillation_on_tilde", true, {}};
  for (std::size_t i = 0; i < n.nodes.size(); ++i) {
    if (range[i] && !(range[i]->second - range[i]->first < scale * half)) {
      osc.pass = false;
      osc.detail = "oscillation " + format_rational(range[i]->second - range[i]->first) + " on node " +
                   std::to_string(i);
      break;
    }
  }

  out.report = construction_report(n, copy_bound);
  out.report.epsilon = epsilon;
  out.report.lipschitz = *lipschitz;
  out.report.error = sup_difference(p, g, out.y);
  out.report.checks.push_back(osc);

  Check constancy{"q_constancy", true, {}};
  for (const auto& x : enumerate_points(rt, copy_bound)) {
    const Rational expected = out.f[quotient_map_refined(n, x).node];
    if (evaluate(out.y, n.source.to_original(x)) != expected) {
      constancy.pass = false;
      constancy.detail = "y differs from f(q(x)) at " + to_string(n.source.to_original(x));
      break;
    }
  }
  out.report.checks.push_back(constancy);

  const Rational allowed = scale * epsilon;
  out.report.checks.push_back(Check{"error_bound", *out.report.error <= allowed,
                                    "error " + format_rational(*out.report.error) + ", allowed " +
                                        format_rational(allowed)});
  const bool finite_excess = out.report.o_n.is_finite();
  out.report.checks.push_back(Check{"index_below_frag_plus_omega", finite_excess,
                                    "o(N) = " + to_string(out.report.o_n) + ", Frag(ε/2) = " +
                                        std::to_string(n.eta() + 1)});
  return out;
}

}  // namespace treespace
