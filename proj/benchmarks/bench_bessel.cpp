#include <benchmark/benchmark.h>

#include "slp/special_fn.hpp"

namespace {

void BM_BesselJ(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(slp::bessel_j(1.5, x));
}
BENCHMARK(BM_BesselJ)->Arg(5)->Arg(50)->Arg(400);

void BM_BesselY(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(slp::bessel_y(1.5, x));
}
BENCHMARK(BM_BesselY)->Arg(5)->Arg(50)->Arg(400);

void BM_Gamma(benchmark::State& state) {
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(slp::gamma_fn(x));
    x = x < 20.0 ? x + 0.1 : 0.3;
  }
}
BENCHMARK(BM_Gamma);

}  // namespace

BENCHMARK_MAIN();
