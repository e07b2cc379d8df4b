#include <benchmark/benchmark.h>

#include "triad/contractions.hpp"
#include "triad/filter.hpp"
#include "triad/generators.hpp"
#include "triad/reducibility.hpp"
#include "triad/schmidt.hpp"

namespace {

using namespace triad;

void BM_Realign(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const BipartiteOperator g = random_density(k, k * k, 1);
  for (auto _ : state) benchmark::DoNotOptimize(realign(g));
}
BENCHMARK(BM_Realign)->DenseRange(2, 6, 2);

void BM_Schmidt(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const BipartiteOperator g = random_density(k, k * k, 2);
  for (auto _ : state) benchmark::DoNotOptimize(schmidt(g));
}
BENCHMARK(BM_Schmidt)->DenseRange(2, 6, 2);

void BM_SymmetricFilter(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const BipartiteOperator g = random_spc(k, 3);
  for (auto _ : state) benchmark::DoNotOptimize(sinkhorn_filter(g, FilterMode::Symmetric));
}
BENCHMARK(BM_SymmetricFilter)->DenseRange(2, 4);

void BM_GeneralFilter(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const BipartiteOperator g = random_density(k, k * k, 4);
  for (auto _ : state) benchmark::DoNotOptimize(sinkhorn_filter(g, FilterMode::General));
}
BENCHMARK(BM_GeneralFilter)->DenseRange(2, 4);

void BM_DecomposeClassical(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const BipartiteOperator g = canonical("classical_diag", k);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(g));
}
BENCHMARK(BM_DecomposeClassical)->DenseRange(2, 5);

void BM_MinimalRankExtract(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const BipartiteOperator g = canonical("classical_diag", k);
  const TriadClassification c = classify(g);
  for (auto _ : state) benchmark::DoNotOptimize(minimal_rank_extract(g, c));
}
BENCHMARK(BM_MinimalRankExtract)->DenseRange(2, 4);

}  // namespace

BENCHMARK_MAIN();
