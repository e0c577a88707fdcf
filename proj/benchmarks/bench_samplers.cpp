#include <vector>

#include <benchmark/benchmark.h>

#include "trunca/copulas.hpp"
#include "trunca/frailty.hpp"
#include "trunca/sampling.hpp"

namespace {

using namespace trunca;

void BM_Log(benchmark::State& state) {
  RngStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_log(0.9, rng));
}
BENCHMARK(BM_Log);

void BM_Sibuya(benchmark::State& state) {
  RngStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_sibuya(0.5, rng));
}
BENCHMARK(BM_Sibuya);

void BM_TiltedSibuya(benchmark::State& state) {
  RngStream rng(1);
  const double p = state.range(0) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_tilted_sibuya(0.5, p, rng));
}
BENCHMARK(BM_TiltedSibuya)->Arg(20)->Arg(51)->Arg(80);

void BM_Stable(benchmark::State& state) {
  RngStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_stable(0.5, rng));
}
BENCHMARK(BM_Stable);

void BM_TiltedStable(benchmark::State& state) {
  RngStream rng(1);
  const double h = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_tilted_stable(0.5, h, rng));
}
BENCHMARK(BM_TiltedStable)->Arg(0)->Arg(1)->Arg(100);

const CopulaModel& model(int which) {
  static const std::vector<CopulaModel> models = {Archimedean(Generator(Family::Clayton, 2.0), 2),
                                                  Archimedean(Generator(Family::Gumbel, 2.0), 2),
                                                  Archimedean(Generator(Family::Joe, 2.0), 2),
                                                  MarshallOlkin2(0.2, 0.7)};
  return models[static_cast<std::size_t>(which)];
}

void BM_SampleTruncated(benchmark::State& state) {
  const auto& m = model(static_cast<int>(state.range(0)));
  const auto tc = truncate_general(m, TruncationPoint(m, {0.5, 0.8}));
  const auto method = state.range(1) == 0 ? SamplingMethod::Tilted : SamplingMethod::Oracle;
  RngStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_truncated(tc, 1000, rng, method));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SampleTruncated)->ArgsProduct({{0, 1, 2, 3}, {0, 1}});

void BM_TruncatedCdf(benchmark::State& state) {
  const auto& m = model(static_cast<int>(state.range(0)));
  const auto tc = truncate_general(m, TruncationPoint(m, {0.5, 0.8}));
  const std::vector<double> u = {0.3, 0.6};
  const bool general = state.range(1) != 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(general ? tc.cdf_general(u, InverseMethod::Bisection) : tc.cdf(u));
}
BENCHMARK(BM_TruncatedCdf)->ArgsProduct({{0, 1, 2, 3}, {0, 1}});

}  // namespace
BENCHMARK_MAIN();
