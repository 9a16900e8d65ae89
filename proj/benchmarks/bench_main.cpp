#include <algorithm>

#include <benchmark/benchmark.h>

#include "lamplighter/free_space.hpp"
#include "lamplighter/generators.hpp"
#include "lamplighter/rng.hpp"
#include "lamplighter/stochastic.hpp"
#include "lamplighter/tree_embedding.hpp"
#include "lamplighter/tsp.hpp"

namespace ll = lamplighter;

static void BM_TspExact(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const ll::MetricSpace m = ll::shortest_path_metric(ll::grid_graph({6, 6}));
  ll::Rng rng(1);
  std::vector<int> targets;
  while (static_cast<int>(targets.size()) < k) {
    const int p = static_cast<int>(rng.below(36));
    if (p != 0 && p != 35 && std::find(targets.begin(), targets.end(), p) == targets.end()) targets.push_back(p);
  }
  const ll::TspInstance inst{&m, 0, ll::make_point_set(targets), 35};
  for (auto _ : state) benchmark::DoNotOptimize(ll::tsp_exact(inst));
}
BENCHMARK(BM_TspExact)->DenseRange(4, 16, 4);

static void BM_EmbedTsTree(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ll::WeightedTree t = ll::random_weighted_tree(n, 7);
  ll::LamplighterPoint p{{}, n / 2};
  for (int v = 0; v < n; v += 3) p.lamps.push_back(v);
  for (auto _ : state) benchmark::DoNotOptimize(ll::embed_ts_tree(t, p));
}
BENCHMARK(BM_EmbedTsTree)->RangeMultiplier(4)->Range(16, 1024);

static void BM_FrtSample(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const ll::MetricSpace m = ll::shortest_path_metric(ll::grid_graph({side, side}));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ll::frt_sample(m, seed++));
}
BENCHMARK(BM_FrtSample)->Arg(4)->Arg(8)->Arg(16);

static void BM_LfNorm(benchmark::State& state) {
  const ll::MetricSpace m = ll::shortest_path_metric(ll::grid_graph({8, 8}));
  const ll::Molecule mu = ll::random_molecule(64, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(ll::lf_norm(m, mu));
}
BENCHMARK(BM_LfNorm)->Arg(4)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
