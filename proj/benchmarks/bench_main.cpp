#include <benchmark/benchmark.h>

#include <hivdelay/hivdelay.hpp>

using namespace hivdelay;

static void BM_IntegrateTransient(benchmark::State& state) {
  const ModelParams p = reference_parameters(static_cast<double>(state.range(0)) / 10.0);
  const HistorySpec h = default_history(p);
  for (auto _ : state) benchmark::DoNotOptimize(integrate(p, h, 400.0).mesh().size());
}
BENCHMARK(BM_IntegrateTransient)->Arg(0)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_FindHopf(benchmark::State& state) {
  const ModelParams p = reference_parameters();
  for (auto _ : state) benchmark::DoNotOptimize(find_hopf(p, Interval{0.0, 2.0}, Interval{0.0, 2.1}));
}
BENCHMARK(BM_FindHopf)->Unit(benchmark::kMillisecond);

static void BM_CountRoots(benchmark::State& state) {
  const QuasiPolynomial qp = char_Ed(reference_parameters(static_cast<double>(state.range(0)) / 10.0));
  for (auto _ : state) benchmark::DoNotOptimize(count_roots_right_of(qp, 0.0));
}
BENCHMARK(BM_CountRoots)->Arg(0)->Arg(10)->Unit(benchmark::kMicrosecond);

static void BM_RightmostRoots(benchmark::State& state) {
  const QuasiPolynomial qp = char_Ed(reference_parameters(0.0));
  for (auto _ : state) benchmark::DoNotOptimize(rightmost_roots(qp, RootRegion{-6, 2, 4}));
}
BENCHMARK(BM_RightmostRoots)->Unit(benchmark::kMicrosecond);

static void BM_NoCrossingCertificate(benchmark::State& state) {
  const ModelParams p = reference_parameters();
  for (auto _ : state) benchmark::DoNotOptimize(no_crossing_certificate(p, Interval{0.8357983104, 1.5512468048}, 2.1));
}
BENCHMARK(BM_NoCrossingCertificate)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
