#include <benchmark/benchmark.h>

#include "slp/liouville.hpp"
#include "slp/paine_inverse.hpp"

namespace {

void BM_BuildMapCase4(benchmark::State& state) {
  const auto r = slp::case4_build({1.0, 0.1}, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(slp::build_map(r.canonical));
}
BENCHMARK(BM_BuildMapCase4);

void BM_ForwardTransformCase1(benchmark::State& state) {
  const auto r = slp::case1_build({2.0, 0.1}, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(slp::forward_transform(r.canonical));
}
BENCHMARK(BM_ForwardTransformCase1);

void BM_Case3Build(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(slp::case3_build({0.75, 0.1}, 1.0, 1.0, 0.0, slp::BesselKind::j));
}
BENCHMARK(BM_Case3Build);

}  // namespace

BENCHMARK_MAIN();
