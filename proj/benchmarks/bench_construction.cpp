#include <benchmark/benchmark.h>

#include <random>

#include "treespace/approximation.hpp"
#include "treespace/construction.hpp"
#include "treespace/generate.hpp"

using namespace treespace;

namespace {

struct Case {
  WeightedTree tree;
  SimpleFunction g;
};

std::vector<Case> cases(std::size_t depth) {
  std::mt19937_64 rng(29 + depth);
  GeneratorOptions opts;
  opts.max_depth = depth;
  std::vector<Case> out;
  for (int i = 0; i < 32; ++i) {
    auto t = random_tree(rng, opts);
    auto g = make_one_lipschitz(t.tree, t.weights, random_function(rng, t.tree, opts));
    out.push_back({std::move(t), std::move(g)});
  }
  return out;
}

void BM_BuildConstruction(benchmark::State& state) {
  const auto cs = cases(static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& c = cs[i++ % cs.size()];
    benchmark::DoNotOptimize(build_construction_tree(c.tree.tree, c.tree.weights, Rational(1, 8)));
  }
}
BENCHMARK(BM_BuildConstruction)->DenseRange(2, 4);

void BM_VerifyConstruction(benchmark::State& state) {
  std::vector<ConstructionTree> built;
  for (const auto& c : cases(static_cast<std::size_t>(state.range(0)))) {
    built.push_back(build_construction_tree(c.tree.tree, c.tree.weights, Rational(1, 8)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_construction(built[i++ % built.size()]));
  }
}
BENCHMARK(BM_VerifyConstruction)->DenseRange(2, 4);

void BM_Approximate(benchmark::State& state) {
  const auto cs = cases(static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& c = cs[i++ % cs.size()];
    benchmark::DoNotOptimize(approximate(c.tree.tree, c.tree.weights, c.g, Rational(1, 4)));
  }
}
BENCHMARK(BM_Approximate)->DenseRange(2, 4);

void BM_QuotientMap(benchmark::State& state) {
  const auto p = cantor_tree(static_cast<std::size_t>(state.range(0)));
  const auto n = build_construction_tree(p, WeightAssignment::uniform(p, 1), Rational(1, 2));
  const auto points = enumerate_points(p, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(quotient_map(n, points[i++ % points.size()]));
  }
}
BENCHMARK(BM_QuotientMap)->DenseRange(1, 4);

}  // namespace
BENCHMARK_MAIN();
