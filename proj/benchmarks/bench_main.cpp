#include <benchmark/benchmark.h>

#include "vsgof/distributions.hpp"
#include "vsgof/edf_tests.hpp"
#include "vsgof/entropy_estimator.hpp"
#include "vsgof/vs_test.hpp"

namespace {

using namespace vsgof;

Sample normal_sample(std::size_t n) {
  Rng rng(n);
  return Sample(sample(Family::normal, {0.0, 1.0}, n, rng));
}

void BM_WindowScan(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Sample x = normal_sample(n);
  const std::size_t m_max = candidate_windows(n, 1.0 / 12.0, false).hi;
  for (auto _ : state) benchmark::DoNotOptimize(window_scan(x, m_max));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WindowScan)->RangeMultiplier(10)->Range(100, 1000000)->Complexity();

void BM_FullScan(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Sample x = normal_sample(n);
  for (auto _ : state) benchmark::DoNotOptimize(window_scan(x, max_window(n)));
}
BENCHMARK(BM_FullScan)->Arg(100)->Arg(1000)->Arg(5000);

void BM_MonteCarloSimple(benchmark::State& state) {
  TestOptions o;
  o.fixed_params = Params{0.5};
  o.replicates = static_cast<std::size_t>(state.range(0));
  o.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo_p_value(50, Family::exponential, {0.5}, o, 0.1));
  }
}
BENCHMARK(BM_MonteCarloSimple)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_MonteCarloCompositeGamma(benchmark::State& state) {
  TestOptions o;
  o.replicates = 500;
  o.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo_p_value(50, Family::gamma, {2.0, 1.0}, o, 0.1));
  }
}
BENCHMARK(BM_MonteCarloCompositeGamma)->Unit(benchmark::kMillisecond);

void BM_EdfTests(benchmark::State& state) {
  const Sample x = normal_sample(100);
  const Distribution null(Family::normal, {0.0, 1.0});
  const EdfTest tests[] = {EdfTest::ks, EdfTest::cvm, EdfTest::ad};
  for (auto _ : state) benchmark::DoNotOptimize(edf_mc_tests(x, null, tests, 500, 1));
}
BENCHMARK(BM_EdfTests)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
