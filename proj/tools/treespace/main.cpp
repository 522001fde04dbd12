// Command-line front end: reads tree/function files, runs one command and
// prints a report. Exit status 0 = success, 1 = a check failed, 2 = bad
// input or usage.

#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "report.hpp"
#include "treespace/approximation.hpp"
#include "treespace/construction.hpp"
#include "treespace/dot.hpp"
#include "treespace/fragmentation.hpp"
#include "treespace/generate.hpp"
#include "treespace/invariants.hpp"
#include "treespace/io.hpp"
#include "treespace/topo_indices.hpp"

namespace ts = treespace;
using treespace::cli::Json;
using treespace::cli::Report;

namespace {

constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ts::Rational positive_epsilon(const std::string& text) {
  const ts::Rational eps = ts::parse_rational(text);
  if (eps <= 0) throw UsageError("epsilon must be positive, got " + text);
  return eps;
}

ts::TreePresentation load_tree(const std::string& path) { return ts::parse_tree(ts::read_file(path)); }

Json natural_json(const ts::Natural& n) {
  if (n.fits_ulong_p()) return Json(n.get_ui());
  return Json(n.get_str());
}

Json construction_nodes(const ts::ConstructionTree& n) {
  std::vector<std::size_t> parent(n.nodes.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < n.nodes.size(); ++i) {
    for (std::size_t c : n.nodes[i].children) parent[c] = i;
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < n.nodes.size(); ++i) {
    const auto desc = n.original_descriptor(n.canonical_instance(i));
    rows.push_back(Json{{"id", i},
                        {"descriptor", ts::to_string(desc)},
                        {"type", desc.kind() == ts::DescriptorKind::typeI ? "I" : "II"},
                        {"alpha", n.nodes[i].alpha},
                        {"parent", parent[i] == static_cast<std::size_t>(-1) ? Json(nullptr) : Json(parent[i])}});
  }
  return rows;
}

void fill_pipeline(Report& r, const ts::PipelineReport& p) {
  r.results["epsilon"] = ts::format_rational(p.epsilon);
  r.results["eta"] = ts::to_string(p.eta);
  r.results["lambda"] = ts::to_string(p.lambda);
  r.results["n"] = natural_json(p.n);
  r.results["bound"] = ts::to_string(p.bound);
  r.results["o_N"] = ts::to_string(p.o_n);
  if (p.error) r.results["error"] = ts::format_rational(*p.error);
  if (p.lipschitz) r.results["lipschitz"] = ts::format_rational(*p.lipschitz);
  r.checks = p.checks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treespace: indices, ε-fragmentation and clopen construction trees of countable compact trees"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format_name = "json";
  app.add_option("--format", format_name, "Report format")->check(CLI::IsMember({"json", "text"}));

  std::function<int(Report&)> action;
  std::string file, tree_file, function_file, dot_path, out_path, function_out, epsilon_text;
  std::uint64_t copy_bound = 2;
  std::size_t depth = 2, max_depth = 4, max_groups = 3;
  std::uint64_t seed = 0;
  bool full_sequence = false, weights_in_tree = false, decay = false;

  auto* indices = app.add_subcommand("indices", "o(T), interval type β and Cantor–Bendixson rank");
  indices->add_option("FILE", file, "Tree file")->required();
  indices->add_option("--dot", dot_path, "Write the tree as Graphviz DOT");
  indices->callback([&] {
    action = [&](Report& r) {
      const auto p = load_tree(file);
      r.inputs["file"] = file;
      const auto cb = ts::cb_rank(p);
      r.results["o"] = ts::to_string(ts::ordinal_index(p));
      r.results["beta"] = ts::to_string(ts::interval_type(p));
      r.results["cb_rank"] = ts::to_string(cb.rank);
      r.results["cb_count"] = natural_json(cb.final_count);
      if (!dot_path.empty()) ts::write_file(dot_path, ts::to_dot(p, ts::WeightAssignment::from_tree(p)));
      return 0;
    };
  });

  auto* fragment = app.add_subcommand("fragment", "ε-derivation sequence and fragmentation index");
  fragment->add_option("FILE", file, "Tree file")->required();
  fragment->add_option("--epsilon", epsilon_text, "Scale ε as p/q")->required();
  fragment->add_flag("--full-sequence", full_sequence, "List every derived set");
  fragment->callback([&] {
    action = [&](Report& r) {
      const auto p = load_tree(file);
      const auto eps = positive_epsilon(epsilon_text);
      const auto w = ts::WeightAssignment::from_tree(p);
      r.inputs["file"] = file;
      r.inputs["epsilon"] = ts::format_rational(eps);
      const auto full = ts::TemplateMarking::full(p);
      const auto seq = ts::derivation_sequence(p, w, eps, full);
      const auto frag = ts::frag_index(p, w, eps, full);
      r.results["frag"] = frag ? ts::to_string(*frag) : "infinite";
      if (const auto scale = ts::fragmentation_scale(w)) {
        const auto sup = ts::frag_index(p, w, *scale, full);
        r.results["scale"] = ts::format_rational(*scale);
        r.results["frag_at_scale"] = sup ? ts::to_string(*sup) : "infinite";
      }
      Json sizes = Json::array();
      for (const auto& f : seq) sizes.push_back(f.marked_count());
      r.results["marked_templates"] = std::move(sizes);
      if (full_sequence) {
        Json sets = Json::array();
        for (const auto& f : seq) sets.push_back(ts::to_string(p, f));
        r.results["sequence"] = std::move(sets);
      }
      return 0;
    };
  });

  auto* zippin = app.add_subcommand("zippin", "Construction tree 𝒩 at ε and, given a function, its approximation");
  zippin->add_option("FILE", file, "Tree file");
  zippin->add_option("--tree", tree_file, "Tree file (alternative to FILE)");
  zippin->add_option("--epsilon", epsilon_text, "Scale ε as p/q")->required();
  zippin->add_option("--function", function_file, "Simple function to approximate");
  zippin->add_option("--dot", dot_path, "Write 𝒩 as Graphviz DOT");
  zippin->add_option("--copy-bound", copy_bound, "ω-copies enumerated by the checks")->check(CLI::Range(2, 16));
  zippin->add_flag("--weights-in-tree", weights_in_tree, "Weights come from the tree file (the default)");
  zippin->callback([&] {
    action = [&](Report& r) {
      const std::string path = !tree_file.empty() ? tree_file : file;
      if (path.empty()) throw UsageError("zippin needs a tree file");
      const auto p = load_tree(path);
      const auto eps = positive_epsilon(epsilon_text);
      const auto w = ts::WeightAssignment::from_tree(p);
      r.inputs["tree"] = path;
      r.inputs["epsilon"] = ts::format_rational(eps);
      if (function_file.empty()) {
        const auto n = ts::build_construction_tree(p, w, eps);
        fill_pipeline(r, ts::construction_report(n, copy_bound));
        r.results["construction"] = construction_nodes(n);
        if (!dot_path.empty()) ts::write_file(dot_path, ts::to_dot(n));
      } else {
        r.inputs["function"] = function_file;
        const auto g = ts::parse_function(ts::read_file(function_file));
        const auto a = ts::approximate(p, w, g, eps, copy_bound);
        fill_pipeline(r, a.report);
        r.results["construction"] = construction_nodes(a.construction);
        r.results["approximation"] = Json::parse(ts::function_to_json(a.y));
        if (!dot_path.empty()) ts::write_file(dot_path, ts::to_dot(a.construction));
      }
      return r.passed() ? 0 : kCheckFailed;
    };
  });

  auto* cantor = app.add_subcommand("cantor", "Depth-truncated tree of finite subsets of ℕ");
  cantor->add_option("--depth", depth, "Truncation depth")->required();
  cantor->add_option("--out", out_path, "Write the tree here instead of stdout");
  cantor->add_flag("--decay", decay, "Weight 2^-k at depth k instead of 1");
  cantor->callback([&] {
    action = [&](Report& r) -> int {
      const auto p = ts::cantor_tree(depth);
      std::vector<ts::Rational> weights;
      for (const auto& t : p.nodes()) {
        weights.push_back(decay ? ts::Rational(1, 1UL << std::min<std::size_t>(t.depth, 62)) : ts::Rational(1));
      }
      const std::string text = ts::tree_to_json(p, ts::WeightAssignment(p, std::move(weights)));
      if (out_path.empty()) {
        std::cout << text;
        return -1;
      }
      ts::write_file(out_path, text);
      r.inputs["depth"] = depth;
      r.results["out"] = out_path;
      r.results["templates"] = p.size();
      return 0;
    };
  });

  auto* check = app.add_subcommand("check", "Compare every invariant against the brute-force oracles");
  check->add_option("FILE", file, "Tree file")->required();
  check->add_option("--epsilon", epsilon_text, "Scale ε as p/q")->required();
  check->add_option("--copy-bound", copy_bound, "ω-copies enumerated by the oracles")->check(CLI::Range(2, 8));
  check->add_option("--function", function_file, "Also check the approximation of this function");
  check->callback([&] {
    action = [&](Report& r) {
      const auto p = load_tree(file);
      ts::InvariantOptions options;
      options.epsilon = positive_epsilon(epsilon_text);
      options.copy_bound = copy_bound;
      r.inputs["file"] = file;
      r.inputs["epsilon"] = ts::format_rational(options.epsilon);
      r.inputs["copy_bound"] = copy_bound;
      std::optional<ts::SimpleFunction> g;
      if (!function_file.empty()) {
        r.inputs["function"] = function_file;
        g = ts::parse_function(ts::read_file(function_file));
      }
      r.checks = ts::check_invariants(p, ts::WeightAssignment::from_tree(p), options, g);
      std::size_t failed = 0;
      for (const auto& c : r.checks) failed += c.pass ? 0 : 1;
      r.results["checks_run"] = r.checks.size();
      r.results["failed"] = failed;
      return failed == 0 ? 0 : kCheckFailed;
    };
  });

  auto* gen = app.add_subcommand("gen", "Deterministic random presentation with weights");
  gen->add_option("--seed", seed, "Random seed")->required();
  gen->add_option("--max-depth", max_depth, "Maximum template depth");
  gen->add_option("--max-groups", max_groups, "Maximum child groups per node");
  gen->add_option("--out", out_path, "Tree file to write")->required();
  gen->add_option("--function-out", function_out, "Also write a random 1-Lipschitz function");
  gen->callback([&] {
    action = [&](Report& r) {
      std::mt19937_64 rng(seed);
      ts::GeneratorOptions options;
      options.max_depth = max_depth;
      options.max_groups = max_groups;
      const auto t = ts::random_tree(rng, options);
      ts::write_file(out_path, ts::tree_to_json(t.tree, t.weights));
      r.inputs["seed"] = seed;
      r.inputs["max_depth"] = max_depth;
      r.inputs["max_groups"] = max_groups;
      r.results["out"] = out_path;
      r.results["templates"] = t.tree.size();
      if (!function_out.empty()) {
        auto g = ts::make_one_lipschitz(t.tree, t.weights, ts::random_function(rng, t.tree, options));
        ts::write_file(function_out, ts::function_to_json(g));
        r.results["function_out"] = function_out;
      }
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kBadInput;
  }

  Report report;
  report.command = app.get_subcommands().front()->get_name();
  const auto format = format_name == "text" ? treespace::cli::Format::text : treespace::cli::Format::json;
  try {
    const int status = action(report);
    if (status < 0) return 0;
    std::cout << report.render(format);
    return status;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const ts::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const ts::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kBadInput;
}
