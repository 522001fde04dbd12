#include <map>

#include "doctest.h"
#include "fixtures.hpp"
#include "treespace/construction.hpp"
#include "treespace/dot.hpp"
#include "treespace/topo_indices.hpp"

using namespace treespace;
using namespace fixtures;

namespace {

std::map<std::string, bool> by_name(const std::vector<Check>& checks) {
  std::map<std::string, bool> out;
  for (const auto& c : checks) out[c.name] = c.pass;
  return out;
}

bool every(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) {
      MESSAGE(c.name << ": " << c.detail);
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("construction") {
  TEST_CASE("weight-1 T1 at 1/2") {
    const auto p = t1();
    const auto n = build_construction_tree(p, WeightAssignment::uniform(p, 1), Rational(1, 2));
    REQUIRE(n.nodes.size() == 2);
    REQUIRE(n.roots == std::vector<std::size_t>{0});
    CHECK(n.nodes[0].source == 0);
    CHECK(n.nodes[0].kind() == DescriptorKind::typeI);
    CHECK(n.nodes[0].alpha == 1);
    CHECK(n.nodes[1].source == 1);
    CHECK(n.nodes[1].kind() == DescriptorKind::typeI);
    CHECK(n.nodes[1].alpha == 0);
    CHECK(n.eta() == 1);
    const auto sh = shape(n);
    CHECK(sh.tree[1].multiplicity.is_omega());
    CHECK(ordinal_index(sh.tree) == Ordinal(2));
    CHECK(every(verify_construction(n)));
    CHECK(every(verify_quotient(n)));
  }

  TEST_CASE("quotient map on T1") {
    const auto p = t1();
    const auto n = build_construction_tree(p, WeightAssignment::uniform(p, 1), Rational(1, 2));
    for (std::uint64_t k = 0; k < 5; ++k) {
      const PointAddress leaf_k{0, {{0, k}}};
      const auto q = quotient_map(n, leaf_k);
      CHECK(q.node == 1);
      CHECK(q.root == leaf_k);
    }
    const auto q = quotient_map(n, PointAddress{0, {}});
    CHECK(q.node == 0);
    CHECK(tilde_witness(n, 0) == std::optional<PointAddress>(PointAddress{0, {}}));
  }

  TEST_CASE("single leaf") {
    const auto p = leaf_tree();
    for (const Rational eps : {Rational(1, 8), Rational(1), Rational(5)}) {
      const auto n = build_construction_tree(p, WeightAssignment::uniform(p, 1), eps);
      REQUIRE(n.nodes.size() == 1);
      CHECK(quotient_map(n, PointAddress{0, {}}).node == 0);
      CHECK(every(verify_construction(n)));
      CHECK(every(verify_quotient(n)));
    }
  }

  TEST_CASE("decaying T2 at 1/8") {
    const auto p = t2();
    const auto n = build_construction_tree(p, decaying_t2_weights(p), Rational(1, 8));
    CHECK(n.eta() == 2);
    CHECK(ordinal_index(shape(n).tree) <= Ordinal(6));
    CHECK(every(verify_construction(n)));
    CHECK(every(verify_quotient(n)));
  }

  TEST_CASE("type II nodes use a minimal exclusion set") {
    // Two finite leaves under a root: at 1/2 both must be cut away.
    const auto p = single(branch({finite_group(leaf(), 1), finite_group(leaf(), 1)}));
    const auto n = build_construction_tree(p, WeightAssignment::uniform(p, 1), Rational(1, 2));
    REQUIRE(n.nodes.size() == 3);
    CHECK(n.nodes[0].excluded == std::vector<std::size_t>{0, 1});
    CHECK(n.roots.size() == 3);
    CHECK(every(verify_construction(n)));
    // With a small second leaf only the first needs excluding.
    const auto q = single(branch({finite_group(leaf(), 1), finite_group(leaf(Rational(1, 4)), 1)}));
    const auto m = build_construction_tree(q, WeightAssignment::from_tree(q), Rational(1, 2));
    CHECK(m.nodes[0].excluded == std::vector<std::size_t>{0});
    CHECK(every(verify_construction(m)));
    CHECK(every(verify_quotient(m)));
  }

  TEST_CASE("finite groups with several copies are split") {
    const auto p = single(branch({finite_group(t1_node(), 3)}));
    const auto n = build_construction_tree(p, WeightAssignment::uniform(p, 1), Rational(1, 2));
    CHECK(n.source.tree.size() == 1 + 3 * 2);
    CHECK(every(verify_construction(n)));
    CHECK(every(verify_quotient(n)));
    const auto q = quotient_map(n, PointAddress{0, {{0, 2}, {0, 7}}});
    CHECK(member(n.original_descriptor(q), PointAddress{0, {{0, 2}, {0, 7}}}));
  }

  TEST_CASE("deleting a descriptor leaves a point uncovered") {
    const auto p = single(branch({finite_group(leaf(), 1)}));
    auto n = build_construction_tree(p, WeightAssignment::uniform(p, 1), Rational(1, 2));
    REQUIRE(n.nodes.size() == 2);
    CHECK(every(verify_construction(n)));
    REQUIRE(n.nodes[1].source == 1);
    n.nodes.pop_back();
    n.roots = {0};
    const auto checks = by_name(verify_construction(n));
    CHECK(!checks.at("cover"));
    CHECK(checks.at("well_founded"));
  }

  TEST_CASE("tampered alpha label") {
    const auto p = t1();
    auto n = build_construction_tree(p, WeightAssignment::uniform(p, 1), Rational(1, 2));
    n.nodes[1].alpha = 1;
    const auto checks = by_name(verify_construction(n));
    CHECK(!checks.at("alpha_labels"));
    CHECK(checks.at("cover"));
  }

  TEST_CASE("inserted empty type II node breaks surjectivity") {
    const auto p = single(branch({finite_group(leaf(), 1), finite_group(leaf(), 1)}));
    auto n = build_construction_tree(p, WeightAssignment::uniform(p, 1), Rational(1, 2));
    REQUIRE(n.nodes[0].excluded == std::vector<std::size_t>{0, 1});
    REQUIRE(n.nodes[2].source == 2);
    n.nodes.push_back(ConstructionNode{0, {0}, 0, {0, 2}});
    n.roots = {3, 1};
    CHECK(!by_name(verify_quotient(n)).at("surjectivity"));
    CHECK(!by_name(verify_construction(n)).at("tilde_partition"));
  }

  TEST_CASE("overlapping siblings break trichotomy") {
    const auto p = t1();
    auto n = build_construction_tree(p, WeightAssignment::uniform(p, 1), Rational(1, 2));
    n.nodes.push_back(ConstructionNode{0, {}, 1, {}});
    n.roots.push_back(2);
    CHECK(!by_name(verify_construction(n)).at("trichotomy"));
  }

  TEST_CASE("repeated initial node") {
    const auto p = t1();
    auto n = build_construction_tree(p, WeightAssignment::uniform(p, 1), Rational(1, 2));
    n.roots = {0, 1};
    n.nodes[0].children.clear();
    const auto checks = by_name(verify_construction(n));
    CHECK(!checks.at("finitely_many_initial_nodes"));
    CHECK_THROWS_AS(shape(n), std::logic_error);
  }

  TEST_CASE("rejects bad scales") {
    const auto p = t1();
    CHECK_THROWS_AS(build_construction_tree(p, WeightAssignment::uniform(p, 1), Rational(0)), std::invalid_argument);
  }

  TEST_CASE("dot export") {
    const auto p = t1();
    const auto n = build_construction_tree(p, WeightAssignment::uniform(p, 1), Rational(1, 2));
    const auto text = to_dot(n);
    CHECK(text.find("α=1") != std::string::npos);
    CHECK(text.find("α=0") != std::string::npos);
    CHECK(text.find("×ω") != std::string::npos);
    CHECK(text == to_dot(n));
    CHECK(to_dot(leaf_tree()).find("->") == std::string::npos);
    const auto t = to_dot(p);
    CHECK(t.find("\"r0\" -> \"r0.0\" [label=\"×ω\"]") != std::string::npos);
  }

  TEST_CASE("all checks pass on generated trees") {
    for (const auto& inst : corpus(40, 83)) {
      for (const Rational eps : {Rational(1, 2), Rational(1, 8)}) {
        const auto n = build_construction_tree(inst.tree, inst.weights, eps);
        CHECK(every(verify_construction(n)));
        CHECK(every(verify_quotient(n)));
      }
    }
  }
}
