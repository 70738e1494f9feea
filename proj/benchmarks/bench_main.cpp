#include <benchmark/benchmark.h>

#include "lrd/lrd.hpp"

namespace {

std::vector<double> fgn(std::size_t n, double h = 0.7) {
  lrd::GeneratorSpec g;
  g.hurst = h;
  g.n = n;
  g.seed = 1;
  const auto s = lrd::generate(g);
  return {s.values().begin(), s.values().end()};
}

void BM_FluctuationFunction(benchmark::State& state) {
  const auto x = fgn(static_cast<std::size_t>(state.range(0)));
  lrd::MfdfaConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(lrd::fluctuation_function(x, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FluctuationFunction)->RangeMultiplier(4)->Range(1 << 12, 1 << 16)->Unit(benchmark::kMillisecond);

void BM_WindowFluctuations(benchmark::State& state) {
  const auto prof = lrd::profile(fgn(1 << 15));
  const auto s = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lrd::window_fluctuations(prof, s, 2));
}
BENCHMARK(BM_WindowFluctuations)->Arg(6)->Arg(48)->Arg(1024)->Unit(benchmark::kMicrosecond);

void BM_GenerateFgn(benchmark::State& state) {
  lrd::GeneratorSpec g;
  g.hurst = 0.8;
  g.n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lrd::generate(g));
    ++g.seed;
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenerateFgn)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Unit(benchmark::kMicrosecond);

void BM_SmoothedPeriodogram(benchmark::State& state) {
  const auto x = fgn(static_cast<std::size_t>(state.range(0)));
  const auto m = lrd::default_bandwidth(x.size());
  for (auto _ : state) benchmark::DoNotOptimize(lrd::smoothed_periodogram(x, m));
}
BENCHMARK(BM_SmoothedPeriodogram)->RangeMultiplier(4)->Range(1 << 12, 1 << 16)->Unit(benchmark::kMicrosecond);

void BM_Adf(benchmark::State& state) {
  const auto x = fgn(35064, 0.5);
  const auto lags = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lrd::adf_test(x, lags));
}
BENCHMARK(BM_Adf)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_Kpss(benchmark::State& state) {
  const auto x = fgn(35064, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(lrd::kpss_test(x, 50));
}
BENCHMARK(BM_Kpss)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
