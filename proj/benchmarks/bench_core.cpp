#include <benchmark/benchmark.h>

#include "fsum/classes.hpp"
#include "fsum/fourier.hpp"
#include "fsum/harness.hpp"
#include "fsum/kernels.hpp"
#include "fsum/matrix.hpp"
#include "fsum/moduli.hpp"

namespace {

void BM_LalMatrix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto w = fsum::NorlundWeights::ones(n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(fsum::lal_matrix(w, n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LalMatrix)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_ClassifyMeanRest(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = fsum::lal_matrix(fsum::NorlundWeights::harmonic(n + 1), n);
  for (auto _ : state) benchmark::DoNotOptimize(fsum::classify(a.row(n), fsum::SeqClass::mrbvs));
}
BENCHMARK(BM_ClassifyMeanRest)->RangeMultiplier(4)->Range(64, 1024);

void BM_KernelSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = fsum::fejer_matrix(n);
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsum::kernel_sum(a, n, t));
    t += 1e-6;
  }
}
BENCHMARK(BM_KernelSum)->RangeMultiplier(4)->Range(16, 1024);

void BM_Coefficients(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = fsum::make_weierstrass(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(fsum::coefficients(f, n, 16 * n));
}
BENCHMARK(BM_Coefficients)->RangeMultiplier(4)->Range(16, 1024);

void BM_TransformMultiplierVsDirect(benchmark::State& state) {
  const std::size_t n = 256;
  const auto a = fsum::lal_matrix(fsum::NorlundWeights::ones(n + 1), n);
  const auto c = fsum::coefficients(fsum::make_abs_power(0.5), n, 16 * n);
  const bool direct = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(direct ? fsum::a_transform_direct(c, a, n, 0.7) : fsum::a_transform(c, a, n, 0.7));
  }
  state.SetLabel(direct ? "direct" : "multiplier");
}
BENCHMARK(BM_TransformMultiplierVsDirect)->Arg(0)->Arg(1);

void BM_RateExperiment(benchmark::State& state) {
  const auto top = static_cast<std::size_t>(state.range(0));
  const auto a = fsum::fejer_matrix(top);
  const auto f = fsum::make_abs_power(0.5);
  const auto omega = fsum::ModulusSpec::power(0.5);
  const auto ns = fsum::geometric_range(16, top);
  fsum::ExperimentParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsum::run_rate_experiment(f, a, omega, params, ns,
                                                       fsum::BoundVariant::thm3_zero_beta,
                                                       fsum::Orientation::forward));
  }
}
BENCHMARK(BM_RateExperiment)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_SmoothnessProfile(benchmark::State& state) {
  const auto f = fsum::make_weierstrass(0.5);
  fsum::SmoothnessOptions options;
  options.t_grid = static_cast<std::size_t>(state.range(0));
  options.x_quad = options.t_grid;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsum::SmoothnessProfile(f, 2.0, 3.141592653589793, {}, options));
  }
}
BENCHMARK(BM_SmoothnessProfile)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
