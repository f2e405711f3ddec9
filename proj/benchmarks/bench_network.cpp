#include <benchmark/benchmark.h>

#include <random>

#include "allen/network.hpp"

namespace {

// Random network over n variables, each pair keeping every relation with probability 0.5.
allen::Network make_network(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution keep(0.5);
  allen::Network net;
  for (std::size_t i = 0; i < n; ++i) net.add_variable("V" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      allen::RelationSet rel;
      for (auto r : allen::kAllRelations)
        if (keep(rng)) rel.insert(r);
      if (rel.empty()) rel.insert(allen::BasicRelation::e);
      net.set(i, j, rel);
    }
  return net;
}

void BM_PathConsistency(benchmark::State& state) {
  auto net = make_network(static_cast<std::size_t>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(allen::path_consistency(net));
}
BENCHMARK(BM_PathConsistency)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_Solve(benchmark::State& state) {
  auto net = make_network(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(allen::solve(net));
}
BENCHMARK(BM_Solve)->Arg(6)->Arg(10)->Unit(benchmark::kMicrosecond);

} // namespace
