#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "treespace/clopen.hpp"
#include "treespace/function.hpp"
#include "treespace/io.hpp"
#include "treespace/metric.hpp"
#include "treespace/oracle.hpp"
#include "treespace/refinement.hpp"

using namespace treespace;
using namespace fixtures;

namespace {

PointAddress at(std::size_t root, std::vector<Step> steps) { return PointAddress{root, std::move(steps)}; }
PointAddress leaf_copy(std::uint64_t k) { return at(0, {{0, k}}); }

}  // namespace

TEST_SUITE("tree") {
  TEST_CASE("validate") {
    CHECK(validate(leaf_tree()).empty());
    CHECK(validate(t1()).empty());
    const auto bad = validate(single(branch({finite_group(leaf(), 0)})));
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].message == "empty group");
    CHECK(bad[0].path == "r0.0");
    CHECK(!validate(TreePresentation(std::vector<PresentationNode>{})).empty());
    CHECK(validate(single(leaf(Rational(-1)))).front().message == "negative weight");
  }

  TEST_CASE("flattened layout") {
    const auto p = t2();
    REQUIRE(p.size() == 3);
    CHECK(p[1].parent == 0);
    CHECK(p[2].depth == 2);
    CHECK(p[2].multiplicity.is_omega());
    CHECK(template_label(p, 2) == "r0.0.0");
    CHECK(p.template_path(2) == std::vector<NodeId>{0, 1, 2});
    CHECK(p.subtree_end(1) == 3);
    CHECK(p.max_depth() == 2);
    CHECK(TreePresentation(p.to_term()).size() == 3);
  }

  TEST_CASE("enumerate_points") {
    CHECK(enumerate_points(t1(), 3).size() == 4);
    CHECK(enumerate_points(leaf_tree(), 5).size() == 1);
    CHECK(enumerate_points(t2(), 2).size() == 7);
    CHECK_THROWS(enumerate_points(t1(), 0));
    for (std::size_t d = 0; d <= 3; ++d) {
      for (std::uint64_t k = 2; k <= 4; ++k) {
        std::uint64_t expected = 0, power = 1;
        for (std::size_t i = 0; i <= d; ++i, power *= k) expected += power;
        CHECK(enumerate_points(cantor_tree(d), k).size() == expected);
      }
    }
    const auto pts = enumerate_points(t2(), 3);
    CHECK(std::is_sorted(pts.begin(), pts.end()));
    CHECK(pts.front() == at(0, {}));
  }

  TEST_CASE("finite groups enumerate every copy") {
    const auto p = single(branch({finite_group(leaf(), 3), omega_group(leaf())}));
    CHECK(enumerate_points(p, 2).size() == 1 + 3 + 2);
    CHECK(!is_valid_address(p, at(0, {{0, 3}})));
    CHECK(is_valid_address(p, at(0, {{1, 300}})));
  }

  TEST_CASE("member") {
    const auto p = t1();
    const ClopenDescriptor whole{at(0, {}), {}};
    for (const auto& b : enumerate_points(p, 4)) CHECK(member(whole, b));
    const ClopenDescriptor cut{at(0, {}), {{0, 0}}};
    CHECK(!member(cut, leaf_copy(0)));
    CHECK(member(cut, leaf_copy(1)));
    CHECK(cut.kind() == DescriptorKind::typeII);
    const ClopenDescriptor one{leaf_copy(1), {}};
    CHECK(!member(one, leaf_copy(2)));
    CHECK(to_string(cut) == "U(r0)\\{0:0}");
    CHECK(validate(p, ClopenDescriptor{at(0, {}), {{0, 0}, {0, 0}}}).size() == 1);
    CHECK(validate(p, ClopenDescriptor{at(0, {}), {{1, 0}}}).size() == 1);
  }

  TEST_CASE("type I basis sets are nested or disjoint") {
    const auto p = t2();
    const auto pts = enumerate_points(p, 3);
    for (const auto& a : pts) {
      for (const auto& b : pts) {
        std::size_t both = 0, in_a = 0, in_b = 0;
        for (const auto& x : pts) {
          const bool ma = member({a, {}}, x), mb = member({b, {}}, x);
          in_a += ma;
          in_b += mb;
          both += ma && mb;
        }
        CHECK((both == 0 || both == in_a || both == in_b));
      }
    }
  }

  TEST_CASE("distance examples") {
    const auto p1 = t1();
    const auto w1 = WeightAssignment::uniform(p1, 1);
    CHECK(distance(p1, w1, leaf_copy(0), leaf_copy(0)) == 0);
    CHECK(distance(p1, w1, leaf_copy(0), leaf_copy(1)) == 1);
    const auto p2 = t2();
    const auto w2 = decaying_t2_weights(p2);
    CHECK(distance(p2, w2, at(0, {{0, 0}, {0, 0}}), at(0, {{0, 0}, {0, 1}})) == Rational(1, 4));
    CHECK(distance(p2, w2, at(0, {{0, 0}, {0, 0}}), at(0, {{0, 1}, {0, 0}})) == 1);
    CHECK(distance(p2, w2, at(0, {{0, 0}}), at(0, {{0, 0}, {0, 3}})) == Rational(1, 4));
  }

  TEST_CASE("weight-1 metric is discrete") {
    const auto p = cantor_tree(3);
    const auto w = WeightAssignment::uniform(p, 1);
    const auto pts = enumerate_points(p, 2);
    for (const auto& a : pts) {
      for (const auto& b : pts) CHECK(distance(p, w, a, b) == (a == b ? 0 : 1));
    }
  }

  TEST_CASE("distance agrees with the symmetric-difference oracle and is an ultrametric") {
    for (const auto& inst : corpus(40, 11)) {
      const auto pts = enumerate_points(inst.tree, 2);
      const std::size_t n = std::min<std::size_t>(pts.size(), 30);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const Rational d = distance(inst.tree, inst.weights, pts[i], pts[j]);
          CHECK(d == oracle::distance(inst.tree, inst.weights, pts[i], pts[j]));
          CHECK(d == distance(inst.tree, inst.weights, pts[j], pts[i]));
          for (std::size_t k = 0; k < n; k += 3) {
            CHECK(d <= std::max(distance(inst.tree, inst.weights, pts[i], pts[k]),
                                distance(inst.tree, inst.weights, pts[k], pts[j])));
          }
        }
      }
    }
  }

  TEST_CASE("evaluate") {
    const auto p = t1();
    const auto c = SimpleFunction::constant(p, Rational(3, 7));
    for (const auto& b : enumerate_points(p, 4)) CHECK(evaluate(c, b) == Rational(3, 7));
    const auto g = t1_bump();
    CHECK(evaluate(g, leaf_copy(5)) == 0);
    CHECK(evaluate(g, leaf_copy(1)) == 1);
    CHECK(evaluate(g, at(0, {})) == 0);
    CHECK(validate(p, g).empty());
    CHECK(max_explicit_count(g) == 3);
  }

  TEST_CASE("function validation") {
    const auto p = single(branch({finite_group(leaf(), 1)}));
    ValueNode root{0, {}};
    root.groups.push_back(ValueGroup{{ValueNode{1, {}}, ValueNode{2, {}}}});
    CHECK(!validate(p, SimpleFunction{{root}}).empty());
    CHECK(!validate(p, SimpleFunction{}).empty());
  }

  TEST_CASE("lipschitz_bound examples") {
    const auto p = t1();
    const auto w = WeightAssignment::uniform(p, 1);
    CHECK(*lipschitz_bound(p, SimpleFunction::constant(p, 5), w) == 0);
    CHECK(*lipschitz_bound(p, t1_bump(), w) <= 1);
    ValueNode jump{0, {}};
    jump.groups.push_back(ValueGroup{{ValueNode{2, {}}}});
    CHECK(*lipschitz_bound(p, SimpleFunction{{jump}}, w) == 2);
    const auto zero = WeightAssignment(p, {Rational(0), Rational(0)});
    CHECK(!lipschitz_bound(p, t1_bump(), zero));
  }

  TEST_CASE("lipschitz_bound and sup_difference agree with pairwise oracles") {
    std::mt19937_64 rng(5);
    for (const auto& inst : corpus(40, 23, GeneratorOptions{3, 2, 2, 3, 2})) {
      const auto f = random_function(rng, inst.tree);
      const auto g = random_function(rng, inst.tree);
      const std::uint64_t bound = std::max(max_explicit_count(f), max_explicit_count(g)) + 2;
      CHECK(lipschitz_bound(inst.tree, f, inst.weights) == oracle::lipschitz(inst.tree, inst.weights, f, bound));
      CHECK(sup_difference(inst.tree, f, g) == oracle::sup_difference(inst.tree, f, g, bound));
      CHECK(sup_difference(inst.tree, f, g) == oracle::sup_difference(inst.tree, f, g, bound + 1));
    }
  }

  TEST_CASE("swapping tail copies changes nothing") {
    std::mt19937_64 rng(9);
    for (const auto& inst : corpus(30, 29, GeneratorOptions{3, 2, 1, 3, 2})) {
      const auto f = random_function(rng, inst.tree);
      const std::uint64_t tail = max_explicit_count(f);
      auto swap = [&](PointAddress b) {
        for (auto& s : b.steps) {
          if (s.copy == tail) s.copy = tail + 1;
          else if (s.copy == tail + 1) s.copy = tail;
        }
        return b;
      };
      const auto pts = enumerate_points(inst.tree, tail + 2);
      for (std::size_t i = 0; i < pts.size(); i += 2) {
        if (!is_valid_address(inst.tree, swap(pts[i]))) continue;
        CHECK(evaluate(f, pts[i]) == evaluate(f, swap(pts[i])));
        for (std::size_t j = 0; j < pts.size(); j += 5) {
          if (!is_valid_address(inst.tree, swap(pts[j]))) continue;
          CHECK(distance(inst.tree, inst.weights, pts[i], pts[j]) ==
                distance(inst.tree, inst.weights, swap(pts[i]), swap(pts[j])));
        }
      }
    }
  }

  TEST_CASE("cantor_tree") {
    CHECK(cantor_tree(0).size() == 1);
    CHECK(cantor_tree(1).size() == 2);
    CHECK(cantor_tree(1)[1].multiplicity.is_omega());
    CHECK(cantor_tree(3).max_depth() == 3);
  }

  TEST_CASE("basis identity of the truncated subsets of N") {
    // U_{A,N} = {B ⊇ A : B \ A ⊆ (N, ∞)} equals U_A minus the cones at A ∪ {n}
    // for max(A) < n ≤ N.
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
            CHECK(member(d, b) == expected);
          }
        }
      }
    }
  }

  TEST_CASE("refinement splits groups into uniform pieces") {
    const auto p = single(branch({finite_group(leaf(Rational(1, 2)), 2), omega_group(t1_node())}, Rational(1)));
    ValueNode root{1, {}};
    root.groups.push_back(ValueGroup{{ValueNode{0, {}}}});
    root.groups.push_back(ValueGroup{{ValueNode{2, {}}, ValueNode{1, {ValueGroup{{ValueNode{3, {}}}}}}}});
    const SimpleFunction f{{root}};
    const SimpleFunction fs[] = {f};
    const auto r = refine(p, fs);
    for (const auto& b : enumerate_points(p, 4)) {
      const auto rb = r.to_refined(b);
      CHECK(r.to_original(rb) == b);
      CHECK(r.values[0][template_of(r.tree, rb)] == evaluate(f, b));
    }
    for (const auto& tn : r.tree.nodes()) {
      if (!tn.multiplicity.is_omega()) CHECK(tn.multiplicity.count() == 1);
    }
    const auto back = r.lower(p, r.values[0]);
    for (const auto& b : enumerate_points(p, 4)) CHECK(evaluate(back, b) == evaluate(f, b));
    auto broken = r.values[0];
    broken.back() += 1;
    CHECK_THROWS_AS(r.lower(p, broken), std::logic_error);
  }

  TEST_CASE("json roundtrip") {
    for (const auto& inst : corpus(25, 31)) {
      const auto text = tree_to_json(inst.tree, inst.weights);
      const auto back = parse_tree(text);
      CHECK(tree_to_json(back, WeightAssignment::from_tree(back)) == text);
    }
    std::mt19937_64 rng(3);
    for (const auto& inst : corpus(25, 37)) {
      const auto f = random_function(rng, inst.tree);
      const auto g = parse_function(function_to_json(f));
      for (const auto& b : enumerate_points(inst.tree, 3)) CHECK(evaluate(f, b) == evaluate(g, b));
    }
  }

  TEST_CASE("json rejects malformed files") {
    CHECK_THROWS_AS(parse_tree("{"), FormatError);
    CHECK_THROWS_AS(parse_tree(R"({"roots":[]})"), FormatError);
    CHECK_THROWS_AS(parse_tree(R"({"roots":[{"groups":[{"template":{},"multiplicity":0}]}]})"), FormatError);
    CHECK_THROWS_AS(parse_tree(R"({"roots":[{"weight":0.5}]})"), FormatError);
    CHECK_THROWS_AS(parse_tree(R"({"roots":[{"weight":"-1/2"}]})"), FormatError);
    CHECK_THROWS_AS(parse_tree(R"({"roots":[{"groups":[{"template":{},"multiplicity":"many"}]}]})"), FormatError);
    CHECK_THROWS_AS(parse_function(R"({"groups":[]})"), FormatError);
    const auto p = parse_tree(R"({"roots":[{"groups":[{"template":{"weight":"1/4"},"multiplicity":"omega"}]}]})");
    CHECK(p.size() == 2);
    CHECK(WeightAssignment::from_tree(p)[0] == 1);
    CHECK(WeightAssignment::from_tree(p)[1] == Rational(1, 4));
  }

  TEST_CASE("rationals") {
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK(parse_rational("-2") == -2);
    CHECK(format_rational(Rational(1)) == "1/1");
    CHECK(format_rational(Rational(-3, 4)) == "-3/4");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("a"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/"), ParseError);
  }
}
