#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "treespace/check.hpp"

namespace treespace::cli {

using Json = nlohmann::ordered_json;

enum class Format { json, text };

/// Uniform envelope of every command's output.
struct Report {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  std::vector<Check> checks;

  bool passed() const { return all_pass(checks); }
  std::string render(Format format) const;
};

}  // namespace treespace::cli
