#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "treespace/function.hpp"
#include "treespace/metric.hpp"
#include "treespace/tree.hpp"

namespace treespace {

/// Reading a tree or function file failed: malformed JSON, a wrong field
/// type, or a value the presentation rejects.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `{"roots":[NODE]}` with
/// `NODE = {"weight":"p/q"?, "groups":[{"template":NODE, "multiplicity": int|"omega"}]}`.
TreePresentation parse_tree(std::string_view json_text);
/// Weights from `w` are written into every node.
std::string tree_to_json(const TreePresentation& p, const WeightAssignment& w);
std::string tree_to_json(const TreePresentation& p);

/// `{"value":"p/q", "groups":[{"explicit":[FNODE, ...]}]}` for one root, or
/// `{"roots":[FNODE, ...]}`.
SimpleFunction parse_function(std::string_view json_text);
std::string function_to_json(const SimpleFunction& f);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace treespace
