#include <benchmark/benchmark.h>

#include <random>

#include "treespace/fragmentation.hpp"
#include "treespace/generate.hpp"
#include "treespace/topo_indices.hpp"

using namespace treespace;

namespace {

std::vector<WeightedTree> sample(std::size_t depth, std::size_t count) {
  std::mt19937_64 rng(17 + depth);
  GeneratorOptions opts;
  opts.max_depth = depth;
  std::vector<WeightedTree> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_tree(rng, opts));
  return out;
}

void BM_IntervalType(benchmark::State& state) {
  const auto trees = sample(static_cast<std::size_t>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(interval_type(trees[i++ % trees.size()].tree));
  }
}
BENCHMARK(BM_IntervalType)->DenseRange(2, 5);

void BM_TreeOfInterval(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<Ordinal> betas;
  for (int i = 0; i < 64; ++i) betas.push_back(random_ordinal(rng, 4, static_cast<std::uint64_t>(state.range(0)), 3));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree_of_interval(betas[i++ % betas.size()]));
  }
}
BENCHMARK(BM_TreeOfInterval)->Arg(2)->Arg(4)->Arg(8);

void BM_DerivationSequence(benchmark::State& state) {
  const auto trees = sample(static_cast<std::size_t>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& t = trees[i++ % trees.size()];
    benchmark::DoNotOptimize(
        derivation_sequence(t.tree, t.weights, Rational(1, 16), TemplateMarking::full(t.tree)));
  }
}
BENCHMARK(BM_DerivationSequence)->DenseRange(2, 5);

void BM_CantorFrag(benchmark::State& state) {
  const auto p = cantor_tree(static_cast<std::size_t>(state.range(0)));
  const auto w = WeightAssignment::uniform(p, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(frag_index(p, w, Rational(1, 2), TemplateMarking::full(p)));
  }
}
BENCHMARK(BM_CantorFrag)->RangeMultiplier(4)->Range(4, 256);

}  // namespace
