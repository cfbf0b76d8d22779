#include <benchmark/benchmark.h>

#include "gdrate/scalar_kernel.hpp"
#include "gdrate/stepsize_solver.hpp"

using namespace gdrate;

static void BM_EvalE(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  double x = -0.73;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_E(x, k));
  }
}
BENCHMARK(BM_EvalE)->Arg(1)->Arg(10)->Arg(30);

static void BM_EvalE_Rational(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Rational x(-73, 100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_E(x, k));
  }
}
BENCHMARK(BM_EvalE_Rational)->Arg(1)->Arg(10)->Arg(30);

static void BM_RateBound(benchmark::State& state) {
  const ProblemInstance inst{static_cast<int>(state.range(0)), 0.1, 1.0, 1.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(rate_bound(inst));
  }
}
BENCHMARK(BM_RateBound)->Arg(1)->Arg(10)->Arg(40);

static void BM_OptimalStepsize(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_stepsize(N, 0.1, 1.0));
  }
}
BENCHMARK(BM_OptimalStepsize)->Arg(1)->Arg(5)->Arg(10)->Arg(40);
