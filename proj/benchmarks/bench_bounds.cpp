#include <benchmark/benchmark.h>

#include "ctxbounds/bell.hpp"
#include "ctxbounds/independence.hpp"
#include "ctxbounds/packing.hpp"
#include "ctxbounds/theta.hpp"

using namespace ctxbounds;

static void BM_ThetaCycle(benchmark::State& state) {
  const Graph g = cycle_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lovasz_theta(g).value);
}
BENCHMARK(BM_ThetaCycle)->Arg(5)->Arg(11)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);

static void BM_IndependenceNumber(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = circulant_graph(n, std::vector<int>{1, 3});
  for (auto _ : state) benchmark::DoNotOptimize(independence_number(g));
}
BENCHMARK(BM_IndependenceNumber)->Arg(20)->Arg(40)->Arg(60);

static void BM_PackingCycle(benchmark::State& state) {
  const auto h = clique_hypergraph(cycle_graph(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(fractional_packing_number(h).value);
}
BENCHMARK(BM_PackingCycle)->Arg(11)->Arg(51)->Arg(101);

static void BM_I3322Direct(benchmark::State& state) {
  const auto f = i3322_functional();
  for (auto _ : state) benchmark::DoNotOptimize(quantum_value_direct(f).value);
}
BENCHMARK(BM_I3322Direct)->Unit(benchmark::kMillisecond);

static void BM_I3322Penalty(benchmark::State& state) {
  const auto f = i3322_functional();
  for (auto _ : state) benchmark::DoNotOptimize(quantum_value_penalty(f).value);
}
BENCHMARK(BM_I3322Penalty)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
