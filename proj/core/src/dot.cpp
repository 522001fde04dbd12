#include "treespace/dot.hpp"

#include <sstream>

namespace treespace {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string edge_label(const Multiplicity& m) {
  return m.is_omega() ? "×ω" : "×" + std::to_string(m.count());
}

template <class Label>
std::string render(const std::string& name, const TreePresentation& p, Label label) {
  std::ostringstream s;
  s << "digraph " << name << " {\n";
  s << "  node [shape=box, fontname=\"monospace\"];\n";
  for (NodeId id = 0; id < p.size(); ++id) {
    s << "  " << quoted(template_label(p, id)) << " [label=" << quoted(label(id)) << "];\n";
  }
  for (NodeId id = 0; id < p.size(); ++id) {
    for (NodeId c : p[id].children) {
      s << "  " << quoted(template_label(p, id)) << " -> " << quoted(template_label(p, c))
        << " [label=" << quoted(edge_label(p[c].multiplicity)) << "];\n";
    }
  }
  s << "}\n";
  return s.str();
}

}  // namespace

std::string to_dot(const TreePresentation& p) {
  return render("tree", p, [&](NodeId id) {
    std::string l = template_label(p, id);
    if (p[id].weight) l += "\\nw=" + format_rational(*p[id].weight);
    return l;
  });
}

std::string to_dot(const TreePresentation& p, const WeightAssignment& w) {
  return render("tree", p, [&](NodeId id) { return template_label(p, id) + "\\nw=" + format_rational(w[id]); });
}

std::string to_dot(const ConstructionTree& n) {
  const ConstructionShape sh = shape(n);
  return render("construction", sh.tree, [&](NodeId t) {
    const std::size_t node = sh.node_of[t];
    const auto desc = n.original_descriptor(n.canonical_instance(node));
    const char* kind = desc.kind() == DescriptorKind::typeI ? "I" : "II";
    return to_string(desc) + "\\ntype " + kind + ", α=" + std::to_string(n.nodes[node].alpha);
  });
}

}  // namespace treespace
