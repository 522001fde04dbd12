#include "treespace/topo_indices.hpp"

#include <algorithm>
#include <stdexcept>

namespace treespace {

Ordinal ordinal_index(const TreePresentation& p) {
  if (p.roots().empty()) return Ordinal{};
  std::vector<std::size_t> height(p.size(), 0);
  for (NodeId id = p.size(); id-- > 0;) {
    for (NodeId c : p[id].children) height[id] = std::max(height[id], height[c] + 1);
  }
  std::size_t top = 0;
  for (NodeId r : p.roots()) top = std::max(top, height[r]);
  return Ordinal(static_cast<std::uint64_t>(top + 1));
}

std::vector<Ordinal> interval_types(const TreePresentation& p) {
  std::vector<Ordinal> beta(p.size());
  for (NodeId id = p.size(); id-- > 0;) {
    Ordinal finite_part;
    Ordinal sigma;
    for (NodeId c : p[id].children) {
      const Ordinal block = beta[c] + Ordinal(1);
      const Multiplicity m = p[c].multiplicity;
      if (m.is_omega()) {
        sigma = sigma + block;
      } else {
        finite_part = finite_part + times(block, Natural(static_cast<unsigned long>(m.count())));
      }
    }
    beta[id] = sigma.is_zero() ? finite_part : finite_part + omega_step(sigma);
  }
  return beta;
}

Ordinal interval_type(const TreePresentation& p) {
  const auto beta = interval_types(p);
  Ordinal out;
  const auto roots = p.roots();
  for (std::size_t r = 0; r < roots.size(); ++r) {
    out = out + beta[roots[r]];
    if (r + 1 < roots.size()) out = out + Ordinal(1);
  }
  return out;
}

Ordinal point_to_ordinal(const TreePresentation& p, const PointAddress& b) {
  const auto beta = interval_types(p);
  const auto path = template_path_of(p, b);
  Ordinal offset;
  for (std::size_t r = 0; r < b.root; ++r) offset = offset + beta[p.roots()[r]] + Ordinal(1);
  for (std::size_t i = 0; i < b.steps.size(); ++i) {
    const NodeId parent = path[i];
    const auto& s = b.steps[i];
    const auto& children = p[parent].children;
    Ordinal finite_total;
    Ordinal sigma_before;
    Ordinal sigma;
    Ordinal start;
    for (std::size_t g = 0; g < children.size(); ++g) {
      const NodeId c = children[g];
      const Ordinal block = beta[c] + Ordinal(1);
      const Multiplicity m = p[c].multiplicity;
      if (m.is_omega()) {
        if (g < s.group) sigma_before = sigma_before + block;
        sigma = sigma + block;
      } else {
        if (g == s.group) start = finite_total + times(block, Natural(static_cast<unsigned long>(s.copy)));
        finite_total = finite_total + times(block, Natural(static_cast<unsigned long>(m.count())));
      }
    }
    if (p[children[s.group]].multiplicity.is_omega()) {
      start = finite_total + times(sigma, Natural(static_cast<unsigned long>(s.copy))) + sigma_before;
    }
    offset = offset + start;
  }
  return offset + beta[path.back()];
}

namespace {

PresentationNode interval_node(const Ordinal& beta) {
  if (beta.is_zero()) return leaf();
  for (const auto& t : beta.terms()) {
    if (!t.exponent.is_finite()) {
      throw std::domain_error("not presentable in regular class: " + to_string(beta));
    }
  }
  std::vector<Ordinal::Term> prefix(beta.terms().begin(), beta.terms().end() - 1);
  const auto& last = beta.terms().back();
  std::vector<ChildGroup> groups;
  auto add_blocks = [&groups](const std::vector<Ordinal::Term>& terms) {
    for (const auto& t : terms) {
      groups.push_back(finite_group(interval_node(omega_pow(t.exponent)), t.coefficient.get_ui()));
    }
  };
  if (last.exponent.is_zero()) {
    // Blocks of type ω^e contribute ω^e + 1 each and absorb the +1 of the
    // previous block; leaves add the remaining units.
    add_blocks(prefix);
    const Natural leaves = prefix.empty() ? last.coefficient : Natural(last.coefficient - 1);
    if (leaves > 0) groups.push_back(finite_group(leaf(), leaves.get_ui()));
  } else {
    if (last.coefficient > 1) prefix.push_back(Ordinal::Term{last.exponent, last.coefficient - 1});
    add_blocks(prefix);
    const Natural e = *last.exponent.finite_value();
    PresentationNode tail = e == 1 ? leaf() : interval_node(omega_pow(Ordinal(Natural(e - 1))));
    groups.push_back(omega_group(std::move(tail)));
  }
  return branch(std::move(groups));
}

}  // namespace

TreePresentation tree_of_interval(const Ordinal& beta) {
  std::vector<PresentationNode> roots;
  roots.push_back(interval_node(beta));
  return TreePresentation(std::move(roots));
}

CbRank cb_rank(const TreePresentation& p) {
  const Ordinal beta = interval_type(p);
  if (beta.is_finite()) return CbRank{Ordinal(1), *beta.finite_value() + 1};
  auto [exponent, coefficient] = leading(beta);
  return CbRank{exponent + Ordinal(1), coefficient};
}

TemplateMarking cb_derive(const TreePresentation& p, const TemplateMarking& f) {
  const auto below = marked_below(p, f);
  TemplateMarking out = TemplateMarking::none(p);
  for (NodeId id = 0; id < p.size(); ++id) {
    if (!f[id]) continue;
    for (NodeId c : p[id].children) {
      if (p[c].multiplicity.is_omega() && below[c]) {
        out.set(id, true);
        break;
      }
    }
  }
  return out;
}

std::vector<TemplateMarking> cb_sequence(const TreePresentation& p) {
  std::vector<TemplateMarking> seq{TemplateMarking::full(p)};
  while (!seq.back().is_empty()) seq.push_back(cb_derive(p, seq.back()));
  return seq;
}

}  // namespace treespace
