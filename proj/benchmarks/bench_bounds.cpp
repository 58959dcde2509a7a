#include <benchmark/benchmark.h>

#include "omegabound/aggregate.hpp"
#include "omegabound/bounds.hpp"
#include "omegabound/quadrature.hpp"

using namespace omegabound;

static void BM_ExpIntegral(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exp_integral_scaled(alpha, 1.0 / 321, 0.0233));
}
BENCHMARK(BM_ExpIntegral)->Arg(0)->Arg(64)->Arg(1024)->Arg(16384);

static void BM_OptimizeAlpha(benchmark::State& state) {
  const int h = static_cast<int>(state.range(0));
  const BoundParams p{h, Rational{1, 321}, 3, h / 3 + 10};
  for (auto _ : state) benchmark::DoNotOptimize(optimize_alpha(p));
}
BENCHMARK(BM_OptimizeAlpha)->Arg(133)->Arg(160)->Arg(189);

static void BM_SecondBound(benchmark::State& state) {
  const int h = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(second_bound(h, Rational{1, 321}, h / 3 + 20));
}
BENCHMARK(BM_SecondBound)->Arg(133)->Arg(189)->Unit(benchmark::kMillisecond);

static void BM_FinalConstants(benchmark::State& state) {
  AggregateConfig cfg;
  cfg.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(final_constants(cfg));
}
BENCHMARK(BM_FinalConstants)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
