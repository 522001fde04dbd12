// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Pass the treespace executable as the first argument to
// include the command-line round trip in criterion 10.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "fixtures.hpp"
#include "treespace/approximation.hpp"
#include "treespace/clopen.hpp"
#include "treespace/construction.hpp"
#include "treespace/fragmentation.hpp"
#include "treespace/oracle.hpp"
#include "treespace/topo_indices.hpp"

using namespace treespace;
using namespace fixtures;

namespace {

constexpr std::size_t kCorpusSize = 500;
constexpr std::uint64_t kCorpusSeed = 20240611;

struct Outcome {
  std::size_t cases = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok && failures.size() < 1000) failures.push_back(what);
  }
};

struct Criterion {
  int id;
  std::string title;
  std::optional<double> limit_seconds;
  std::function<Outcome()> run;
};

const std::vector<Instance>& shared_corpus() {
  static const std::vector<Instance> instances = corpus(kCorpusSize, kCorpusSeed);
  return instances;
}

Ordinal w() { return Ordinal::omega(); }

Ordinal generated_ordinal(std::mt19937_64& rng, std::size_t i) {
  return i % 2 == 0 ? random_ordinal(rng) : random_nested_ordinal(rng, 1 + i % 3);
}

Outcome ordinal_suite() {
  Outcome out;
  out.expect(Ordinal(1) + w() == w(), "1+w != w");
  out.expect(w() + Ordinal(1) != w(), "w+1 == w");
  std::mt19937_64 rng(101);
  for (std::size_t i = 0; i < 10000; ++i) {
    const Ordinal a = generated_ordinal(rng, i);
    const Ordinal b = generated_ordinal(rng, i + 1);
    const Ordinal c = generated_ordinal(rng, i + 3);
    const std::string ctx = to_string(a) + ", " + to_string(b) + ", " + to_string(c);
    out.expect((a + b) + c == a + (b + c), "associativity " + ctx);
    if (b < c) out.expect(a + b < a + c, "right monotonicity " + ctx);
    if (c < b) out.expect(a + c < a + b, "right monotonicity " + ctx);
    out.expect(a <= a + b && b <= a + b, "sum bounds " + ctx);
    // a + b = b exactly when every term of a is absorbed by b's leading term.
    if (!a.is_zero() && !b.is_zero()) {
      const bool absorbed = leading(a).first < leading(b).first;
      out.expect((a + b == b) == absorbed, "absorption " + ctx);
    }
    out.expect(parse_ordinal(to_string(a)) == a, "roundtrip " + to_string(a));
  }
  return out;
}

Outcome cb_below_o() {
  Outcome out;
  for (const auto& inst : shared_corpus()) {
    const Ordinal o = ordinal_index(inst.tree);
    const Ordinal cb = cb_rank(inst.tree).rank;
    out.expect(cb <= o, "CB " + to_string(cb) + " > o " + to_string(o));
  }
  return out;
}

// Closed form from the leading term of β, computed here from scratch.
CbRank closed_form(const Ordinal& beta) {
  if (beta.is_zero()) return {Ordinal(1), Natural(1)};
  const auto [gamma, n] = leading(beta);
  if (gamma.is_zero()) return {Ordinal(1), n + 1};
  return {gamma + Ordinal(1), n};
}

Outcome interval_types_hold() {
  Outcome out;
  for (const auto& inst : shared_corpus()) {
    const Ordinal beta = interval_type(inst.tree);
    const Ordinal o = ordinal_index(inst.tree);
    out.expect(beta <= omega_pow(o), "beta " + to_string(beta) + " above w^" + to_string(o));
    const auto cb = cb_rank(inst.tree);
    const auto expected = closed_form(beta);
    out.expect(cb.rank == expected.rank && cb.final_count == expected.final_count,
               "cb_rank closed form for " + to_string(beta));
  }
  std::mt19937_64 rng(103);
  for (std::size_t i = 0; i < 1000; ++i) {
    const Ordinal beta = random_ordinal(rng, 4, 4, 3);
    const auto p = tree_of_interval(beta);
    out.expect(interval_type(p) == beta, "roundtrip " + to_string(beta));
    const auto cb = cb_rank(p);
    const auto expected = closed_form(beta);
    out.expect(cb.rank == expected.rank && cb.final_count == expected.final_count,
               "cb_rank closed form for " + to_string(beta));
  }
  return out;
}

Outcome weight_one_bridge() {
  Outcome out;
  std::size_t index = 0;
  for (const auto& inst : shared_corpus()) {
    const auto& p = inst.tree;
    const auto derived =
        derivation_sequence(p, WeightAssignment::uniform(p, 1), Rational(1, 2), TemplateMarking::full(p));
    const auto cb = cb_sequence(p);
    bool same = derived.size() == cb.size();
    for (std::size_t i = 0; same && i < cb.size(); ++i) same = derived[i] == cb[i];
    out.expect(same, "sequences differ on corpus tree " + std::to_string(index));
    ++index;
  }
  return out;
}

Outcome fragmentation_traces() {
  Outcome out;
  for (std::size_t k = 0; k <= 4; ++k) {
    const auto p = uniform_tree(k);
    const auto frag = frag_index(p, WeightAssignment::uniform(p, 1), Rational(1, 2), TemplateMarking::full(p));
    out.expect(frag == std::optional<Ordinal>(Ordinal(k + 1)), "uniform depth " + std::to_string(k));
  }
  const auto p2 = t2();
  const auto w2 = decaying_t2_weights(p2);
  out.expect(frag_index(p2, w2, Rational(1, 2), TemplateMarking::full(p2)) == std::optional<Ordinal>(Ordinal(2)),
             "decaying T2 at 1/2");
  out.expect(frag_index(p2, w2, Rational(1, 8), TemplateMarking::full(p2)) == std::optional<Ordinal>(Ordinal(3)),
             "decaying T2 at 1/8");
  return out;
}

oracle::PointSet points_of(const TreePresentation& p, const TemplateMarking& f, std::uint64_t bound) {
  oracle::PointSet out;
  for (const auto& x : enumerate_points(p, bound)) {
    if (contains(p, f, x)) out.insert(x);
  }
  return out;
}

// Presentations carry no per-copy overrides, so the largest explicit index
// is 0 and the bounds are 2 and 3.
Outcome oracle_equivalence() {
  Outcome out;
  const auto& instances = shared_corpus();
  std::size_t checked = 0;
  for (std::size_t i = 0; i < instances.size() && checked < 200; ++i) {
    const auto& [p, weights] = instances[i];
    if (enumerate_points(p, 4).size() > 3000) continue;
    ++checked;
    const Rational eps = i % 2 == 0 ? Rational(1, 4) : *fragmentation_scale(weights);
    const auto seq = derivation_sequence(p, weights, eps, TemplateMarking::full(p));
    for (std::size_t s = 0; s + 1 < seq.size(); ++s) {
      std::optional<oracle::PointSet> previous;
      for (std::uint64_t bound : {2, 3}) {
        const auto brute = oracle::derive(p, weights, points_of(p, seq[s], bound + 1), eps, bound);
        for (const auto& x : enumerate_points(p, 2)) {
          out.expect(contains(p, seq[s + 1], x) == brute.contains(x),
                     "tree " + std::to_string(i) + " step " + std::to_string(s) + " point " + to_string(x));
        }
        oracle::PointSet low;
        for (const auto& x : brute) {
          if (std::ranges::all_of(x.steps, [](const Step& st) { return st.copy < 2; })) low.insert(x);
        }
        if (previous) out.expect(*previous == low, "bounds 2 and 3 disagree on tree " + std::to_string(i));
        previous = std::move(low);
      }
    }
  }
  out.expect(checked >= 200, "only " + std::to_string(checked) + " instances small enough to enumerate");
  return out;
}

std::vector<Rational> construction_scales(const WeightAssignment& weights) {
  std::vector<Rational> out{Rational(1, 2), Rational(1, 8)};
  if (const auto s = fragmentation_scale(weights)) out.push_back(*s);
  return out;
}

Outcome construction_postconditions(bool quotient) {
  Outcome out;
  std::size_t index = 0;
  for (const auto& inst : shared_corpus()) {
    for (const Rational& eps : construction_scales(inst.weights)) {
      const std::string ctx = "tree " + std::to_string(index) + " eps " + format_rational(eps) + ": ";
      const auto n = build_construction_tree(inst.tree, inst.weights, eps);
      const auto checks = quotient ? verify_quotient(n) : verify_construction(n);
      for (const auto& c : checks) out.expect(c.pass, ctx + c.name + " " + c.detail);
      if (quotient) {
        // Spot check: every enumerated point lies in the set of q(x).
        for (const auto& x : enumerate_points(inst.tree, 2)) {
          out.expect(member(n.original_descriptor(quotient_map(n, x)), x), ctx + "x outside q(x): " + to_string(x));
        }
      }
    }
    ++index;
  }
  return out;
}

struct FunctionTree {
  std::string name;
  TreePresentation tree;
  WeightAssignment weights;
};

WeightAssignment halving_weights(const TreePresentation& p) {
  std::vector<Rational> values;
  for (NodeId id = 0; id < p.size(); ++id) {
    Rational v(1);
    for (std::size_t d = 0; d < p[id].depth; ++d) v /= 2;
    values.push_back(v);
  }
  return WeightAssignment(p, std::move(values));
}

Outcome approximation_error() {
  std::vector<FunctionTree> trees;
  for (std::size_t d = 0; d <= 3; ++d) {
    const auto c = cantor_tree(d);
    trees.push_back({"cantor(" + std::to_string(d) + ")", c, WeightAssignment::uniform(c, 1)});
    trees.push_back({"cantor(" + std::to_string(d) + ") halving", c, halving_weights(c)});
  }
  trees.push_back({"T1", t1(), WeightAssignment::uniform(t1(), 1)});
  trees.push_back({"decaying T2", t2(), decaying_t2_weights(t2())});
  for (std::size_t i = 0; i < 12; ++i) {
    const auto& inst = shared_corpus()[i * 37];
    trees.push_back({"corpus " + std::to_string(i * 37), inst.tree, inst.weights});
  }

  Outcome out;
  std::mt19937_64 rng(107);
  for (const auto& t : trees) {
    for (std::size_t k = 0; k < 100; ++k) {
      const auto g = make_one_lipschitz(t.tree, t.weights, random_function(rng, t.tree));
      for (const Rational eps : {Rational(1, 2), Rational(1, 4)}) {
        const std::string ctx = t.name + " function " + std::to_string(k) + " eps " + format_rational(eps) + ": ";
        const auto a = approximate(t.tree, t.weights, g, eps);
        const Rational error = sup_difference(t.tree, g, a.y);
        out.expect(error <= eps, ctx + "error " + format_rational(error));
        out.expect(a.report.error && *a.report.error == error, ctx + "reported error differs");
        out.expect(a.report.o_n.is_finite(), ctx + "o(N) " + to_string(a.report.o_n) + " not finite");
        for (const auto& c : a.report.checks) out.expect(c.pass, ctx + c.name + " " + c.detail);
        if (k % 25 == 0) {
          const Rational brute = oracle::sup_difference(t.tree, g, a.y, max_explicit_count(g) + 2);
          out.expect(brute == error, ctx + "oracle error " + format_rational(brute));
        }
      }
    }
  }
  return out;
}

std::string quote(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

Outcome truncation_identity(const std::optional<std::string>& cli) {
  Outcome out;
  for (std::size_t depth = 0; depth <= 3; ++depth) {
    const auto p = cantor_tree(depth);
    const auto pts = enumerate_points(p, 5);
    for (const auto& a : pts) {
      if (template_of(p, a) + 1 == p.size()) continue;
      const auto set_a = as_set(a);
      const std::uint64_t start = set_a.empty() ? 0 : set_a.back() + 1;
      for (std::uint64_t n = start; n < start + 4; ++n) {
        ClopenDescriptor d{a, {}};
        for (std::uint64_t m = start; m <= n; ++m) d.excluded.push_back(Step{0, m - start});
        for (const auto& b : pts) {
          const auto set_b = as_set(b);
          bool expected = b.extends(a);
          if (expected && set_b.size() > set_a.size()) expected = set_b[set_a.size()] > n;
          out.expect(member(d, b) == expected, "depth " + std::to_string(depth) + " A=" + to_string(a) +
                                                   " N=" + std::to_string(n) + " B=" + to_string(b));
        }
      }
    }
  }
  if (!cli) {
    out.expect(false, "no command-line executable given");
    return out;
  }
  const auto dir = std::filesystem::temp_directory_path() / ("treespace-acceptance-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto tree = dir / "cantor3.json";
  const std::string exe = quote(*cli);
  const std::string quiet = " > " + quote(dir / "log.txt") + " 2>&1";
  out.expect(std::system((exe + " cantor --depth 3 --out " + quote(tree) + quiet).c_str()) == 0, "cantor failed");
  out.expect(std::system((exe + " zippin " + quote(tree) + " --epsilon 1/2" + quiet).c_str()) == 0, "zippin failed");
  out.expect(std::system((exe + " check " + quote(tree) + " --epsilon 1/2" + quiet).c_str()) == 0, "check failed");
  std::filesystem::remove_all(dir);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::optional<std::string> cli = argc > 1 ? std::optional<std::string>(argv[1]) : std::nullopt;
  const std::vector<Criterion> criteria = {
      {1, "ordinal algebra on 10^4 generated ordinals", 5.0, ordinal_suite},
      {2, "CB(T) <= o(T) on the corpus", 30.0, cb_below_o},
      {3, "interval type bound, roundtrip and cb_rank closed form", 30.0, interval_types_hold},
      {4, "weight-1 derivation equals Cantor-Bendixson derivation at 1/2", std::nullopt, weight_one_bridge},
      {5, "fragmentation hand traces", 5.0, fragmentation_traces},
      {6, "derive_once against the neighbourhood oracle at bounds 2 and 3", std::nullopt, oracle_equivalence},
      {7, "construction postconditions at 1/2, 1/8 and half the smallest weight", 120.0,
       [] { return construction_postconditions(false); }},
      {8, "quotient map preimages and surjectivity", std::nullopt, [] { return construction_postconditions(true); }},
      {9, "approximation error <= eps for 1-Lipschitz functions", 120.0, approximation_error},
      {10, "truncated basis identity and cantor -> zippin -> check", std::nullopt,
       [&cli] { return truncation_identity(cli); }},
  };

  shared_corpus();
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.failures.push_back(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = !c.limit_seconds || seconds < *c.limit_seconds;
    const bool pass = outcome.failures.empty() && in_time;
    all = all && pass;

    std::ostringstream timing;
    timing.precision(2);
    timing << std::fixed << seconds << " s";
    if (c.limit_seconds) timing << " of " << *c.limit_seconds << " s";
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << " (" << outcome.cases
              << " cases, " << timing.str() << ")\n";
    if (!in_time) std::cout << "    time limit exceeded\n";
    for (std::size_t i = 0; i < outcome.failures.size() && i < 10; ++i) {
      std::cout << "    " << outcome.failures[i] << "\n";
    }
  }
  return all ? 0 : 1;
}
