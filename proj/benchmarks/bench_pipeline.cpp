#include <benchmark/benchmark.h>

#include "gdrate/gd_lab.hpp"
#include "gdrate/verifier.hpp"

using namespace gdrate;

static void BM_BuildCertificate(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const double g = optimal_stepsize(N, 0.1, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_certificate(N, 1.0 - g, 1.0 - 0.1 * g, 1.0));
  }
}
BENCHMARK(BM_BuildCertificate)->Arg(2)->Arg(10)->Arg(40);

static void BM_AssemblePep(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const double g = optimal_stepsize(N, 0.1, 1.0);
  const auto cert = build_certificate(N, 1.0 - g, 1.0 - 0.1 * g, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_pep_set(cert, 0.1));
  }
}
BENCHMARK(BM_AssemblePep)->Arg(2)->Arg(10)->Arg(40);

static void BM_Certify(benchmark::State& state) {
  const ProblemInstance inst{static_cast<int>(state.range(0)), 0.1, 1.0, 1.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify(inst));
  }
}
BENCHMARK(BM_Certify)->Arg(1)->Arg(5)->Arg(10);

static void BM_ExactBalance(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const double g = optimal_stepsize(N, 0.9, 1.0);
  const auto cert =
      build_certificate<Rational>(N, Rational(1.0 - g), Rational(1.0 - 0.9 * g), Rational(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_balance(cert));
  }
}
BENCHMARK(BM_ExactBalance)->Arg(2)->Arg(10);

static void BM_GdRun(benchmark::State& state) {
  const auto spec = FunctionSpec::quadratic(std::vector<double>(16, 0.8));
  const std::vector<double> x0(16, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_gd(spec, x0, 1.2, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_GdRun)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
