#include "treespace/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace treespace {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(where + ": missing \"" + key + "\"");
  return *it;
}

Rational read_rational(const json& j, const std::string& where) {
  if (!j.is_string()) throw FormatError(where + ": rationals are written as \"p/q\" strings");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw FormatError(where + ": " + e.what());
  }
}

PresentationNode read_node(const json& j, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": expected an object");
  PresentationNode node;
  if (const auto it = j.find("weight"); it != j.end() && !it->is_null()) {
    node.weight = read_rational(*it, where + ".weight");
  }
  if (const auto it = j.find("groups"); it != j.end()) {
    if (!it->is_array()) throw FormatError(where + ".groups: expected an array");
    for (std::size_t g = 0; g < it->size(); ++g) {
      const std::string at = where + "." + std::to_string(g);
      const json& group = (*it)[g];
      const json& m = field(group, "multiplicity", at);
      Multiplicity mult;
      if (m.is_string() && m.get<std::string>() == "omega") {
        mult = Multiplicity::omega();
      } else if (m.is_number_integer() && m.get<std::int64_t>() >= 1) {
        mult = Multiplicity::finite(m.get<std::uint64_t>());
      } else {
        throw FormatError(at + ": multiplicity must be a positive integer or \"omega\"");
      }
      node.groups.push_back(ChildGroup{read_node(field(group, "template", at), at), mult});
    }
  }
  return node;
}

json write_node(const TreePresentation& p, const WeightAssignment* w, NodeId id) {
  json j = json::object();
  if (w != nullptr) {
    j["weight"] = format_rational((*w)[id]);
  } else if (p[id].weight) {
    j["weight"] = format_rational(*p[id].weight);
  }
  json groups = json::array();
  for (NodeId c : p[id].children) {
    const Multiplicity m = p[c].multiplicity;
    groups.push_back(json{{"template", write_node(p, w, c)},
                          {"multiplicity", m.is_omega() ? json("omega") : json(m.count())}});
  }
  j["groups"] = std::move(groups);
  return j;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

ValueNode read_value(const json& j, const std::string& where) {
  ValueNode node{read_rational(field(j, "value", where), where + ".value"), {}};
  if (const auto it = j.find("groups"); it != j.end()) {
    if (!it->is_array()) throw FormatError(where + ".groups: expected an array");
    for (std::size_t g = 0; g < it->size(); ++g) {
      const std::string at = where + "." + std::to_string(g);
      ValueGroup group;
      const json& entry = (*it)[g];
      if (!entry.is_null()) {
        const json& list = field(entry, "explicit", at);
        if (!list.is_array()) throw FormatError(at + ".explicit: expected an array");
        for (std::size_t k = 0; k < list.size(); ++k) {
          group.explicit_copies.push_back(read_value(list[k], at + ":" + std::to_string(k)));
        }
      }
      node.groups.push_back(std::move(group));
    }
  }
  return node;
}

json write_value(const ValueNode& v) {
  json j{{"value", format_rational(v.value)}};
  if (!v.groups.empty()) {
    json groups = json::array();
    for (const auto& g : v.groups) {
      json list = json::array();
      for (const auto& c : g.explicit_copies) list.push_back(write_value(c));
      groups.push_back(json{{"explicit", std::move(list)}});
    }
    j["groups"] = std::move(groups);
  }
  return j;
}

}  // namespace

TreePresentation parse_tree(std::string_view json_text) {
  const json doc = parse_json(json_text);
  const json& roots = field(doc, "roots", "tree");
  if (!roots.is_array()) throw FormatError("tree.roots: expected an array");
  std::vector<PresentationNode> nodes;
  for (std::size_t r = 0; r < roots.size(); ++r) nodes.push_back(read_node(roots[r], "r" + std::to_string(r)));
  TreePresentation p(std::move(nodes));
  if (const auto diags = validate(p); !diags.empty()) {
    throw FormatError(diags.front().path + ": " + diags.front().message);
  }
  return p;
}

std::string tree_to_json(const TreePresentation& p, const WeightAssignment& w) {
  json roots = json::array();
  for (NodeId r : p.roots()) roots.push_back(write_node(p, &w, r));
  return json{{"roots", std::move(roots)}}.dump(2) + "\n";
}

std::string tree_to_json(const TreePresentation& p) {
  json roots = json::array();
  for (NodeId r : p.roots()) roots.push_back(write_node(p, nullptr, r));
  return json{{"roots", std::move(roots)}}.dump(2) + "\n";
}

SimpleFunction parse_function(std::string_view json_text) {
  const json doc = parse_json(json_text);
  SimpleFunction f;
  if (doc.is_object() && doc.contains("roots")) {
    const json& roots = doc["roots"];
    if (!roots.is_array()) throw FormatError("function.roots: expected an array");
    for (std::size_t r = 0; r < roots.size(); ++r) f.roots.push_back(read_value(roots[r], "r" + std::to_string(r)));
  } else {
    f.roots.push_back(read_value(doc, "r0"));
  }
  return f;
}

std::string function_to_json(const SimpleFunction& f) {
  if (f.roots.size() == 1) return write_value(f.roots.front()).dump(2) + "\n";
  json roots = json::array();
  for (const auto& r : f.roots) roots.push_back(write_value(r));
  return json{{"roots", std::move(roots)}}.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << content;
}

}  // namespace treespace
