#include "report.hpp"

#include <sstream>

namespace treespace::cli {

namespace {

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void text_section(std::ostringstream& s, const Json& obj) {
  for (const auto& [key, value] : obj.items()) {
    if (value.is_array() && !value.empty() && value.front().is_object()) {
      s << key << ":\n";
      for (const auto& row : value) {
        s << " ";
        for (const auto& [k, v] : row.items()) s << " " << k << "=" << scalar(v);
        s << "\n";
      }
    } else {
      s << key << ": " << scalar(value) << "\n";
    }
  }
}

}  // namespace

std::string Report::render(Format format) const {
  if (format == Format::json) {
    Json checks_json = Json::array();
    for (const auto& c : checks) {
      checks_json.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    Json doc{{"command", command}, {"inputs", inputs}, {"results", results}, {"checks", std::move(checks_json)}};
    return doc.dump(2) + "\n";
  }
  std::ostringstream s;
  s << "command: " << command << "\n";
  text_section(s, inputs);
  text_section(s, results);
  for (const auto& c : checks) {
    s << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) s << " (" << c.detail << ")";
    s << "\n";
  }
  return s.str();
}

}  // namespace treespace::cli
