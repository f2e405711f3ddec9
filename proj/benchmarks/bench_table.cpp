#include <benchmark/benchmark.h>

#include "allen/derivation.hpp"
#include "allen/endpoint_model.hpp"

namespace {

void BM_OracleTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(allen::oracle_table());
}
BENCHMARK(BM_OracleTable)->Unit(benchmark::kMillisecond);

void BM_DeriveComposition(benchmark::State& state) {
  using enum allen::BasicRelation;
  for (auto _ : state) benchmark::DoNotOptimize(allen::derive_composition(d, di));
}
BENCHMARK(BM_DeriveComposition)->Unit(benchmark::kMicrosecond);

void BM_TableByDerivation(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(allen::verify_table_by_derivation());
}
BENCHMARK(BM_TableByDerivation)->Unit(benchmark::kMillisecond);

} // namespace
