#include <benchmark/benchmark.h>

#include <numbers>

#include "slp/eigensolver.hpp"

namespace {

slp::SchrodingerSLP paine() {
  slp::SchrodingerSLP s;
  s.invariant = slp::Expression::parse("1/(t+0.1)^2", "t");
  s.beta = std::numbers::pi;
  return s;
}

void BM_SolveSpectrum(benchmark::State& state) {
  const auto s = paine();
  slp::SolveOptions o;
  o.n = static_cast<int>(state.range(0));
  o.count = 5;
  for (auto _ : state) benchmark::DoNotOptimize(slp::solve_spectrum(s, o));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveSpectrum)->RangeMultiplier(2)->Range(500, 8000)->Complexity();

void BM_SturmCount(benchmark::State& state) {
  const auto t = slp::discretize_schrodinger(paine(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(slp::sturm_count(t, 10.0));
}
BENCHMARK(BM_SturmCount)->Arg(2000)->Arg(16000);

}  // namespace

BENCHMARK_MAIN();
