#include <benchmark/benchmark.h>

#include <random>

#include "syncmat/automaton.hpp"
#include "syncmat/exact_la.hpp"
#include "syncmat/harness.hpp"
#include "syncmat/l_matrix.hpp"

using namespace syncmat;

static void BM_shortest_reset_cyclic(benchmark::State& state) {
  Dfa dfa = build_cerny(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(shortest_sync_word(dfa));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_shortest_reset_cyclic)->DenseRange(4, 20, 4)->Complexity();

static void BM_greedy_reset_cyclic(benchmark::State& state) {
  Dfa dfa = build_cerny(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_sync_word(dfa));
}
BENCHMARK(BM_greedy_reset_cyclic)->DenseRange(8, 64, 8);

static void BM_is_synchronizing(benchmark::State& state) {
  Dfa dfa = build_cerny(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_synchronizing(dfa));
}
BENCHMARK(BM_is_synchronizing)->RangeMultiplier(2)->Range(8, 256);

static void BM_matrix_product(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::vector<State> ra(n), rb(n);
  for (int i = 0; i < n; ++i) {
    ra[i] = static_cast<State>(rng() % n) + 1;
    rb[i] = static_cast<State>(rng() % n) + 1;
  }
  WordMatrix a(ra), b(rb);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_matrix_product)->RangeMultiplier(4)->Range(4, 1024);

static void BM_chain_rank_kari(benchmark::State& state) {
  Dfa kari = build_kari();
  const GoldenTable& table = golden_kari();
  for (auto _ : state) {
    ChainReport report = independent_chain(kari, table);
    benchmark::DoNotOptimize(report.rank);
  }
}
BENCHMARK(BM_chain_rank_kari);

static void BM_left_closure_kari(benchmark::State& state) {
  Dfa kari = build_kari();
  std::vector<Word> seeds{Word("b")};
  for (auto _ : state) {
    auto result = span_left_closure(kari, seeds);
    benchmark::DoNotOptimize(result.basis.rank());
  }
}
BENCHMARK(BM_left_closure_kari);

static void BM_census(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    CensusReport report = audit_small_dfas(n, 2);
    benchmark::DoNotOptimize(report.max_reset_length);
  }
}
BENCHMARK(BM_census)->DenseRange(2, 4, 1);

BENCHMARK_MAIN();
