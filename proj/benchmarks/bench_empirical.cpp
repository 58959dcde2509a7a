#include <benchmark/benchmark.h>

#include "omegabound/empirical.hpp"

using namespace omegabound;

static void BM_FactorSegment(benchmark::State& state) {
  const std::int64_t x_min = state.range(0);
  const RangeJob job{x_min, x_min + 65536, 2, 1, 65536, 1};
  const RootTable table = RootTable::build(static_cast<std::uint64_t>(x_min + 65536));
  for (auto _ : state) {
    std::int64_t factors = 0;
    factor_range(job, [&](const FactorProfile& f) { factors += static_cast<std::int64_t>(f.factors.size()); }, &table);
    benchmark::DoNotOptimize(factors);
  }
  state.SetItemsProcessed(state.iterations() * 65536);
}
BENCHMARK(BM_FactorSegment)->Arg(0)->Arg(1000000)->Arg(9000000)->Unit(benchmark::kMillisecond);

static void BM_RootTableBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(RootTable::build(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_RootTableBuild)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_Nu(benchmark::State& state) {
  std::uint64_t d = 999999000001ULL;
  for (auto _ : state) benchmark::DoNotOptimize(nu(d++));
}
BENCHMARK(BM_Nu);
