#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "pcrank/inconsistency.hpp"
#include "pcrank/montecarlo.hpp"
#include "pcrank/priority.hpp"
#include "pcrank/similarity.hpp"

namespace {

pcrank::PCMatrix random_matrix(std::size_t n, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed * 1000 + n);
  std::uniform_real_distribution<double> u(-std::log(9.0), std::log(9.0));
  std::vector<double> upper(pcrank::upper_triangle_size(n));
  for (double& v : upper) v = std::exp(u(rng));
  return pcrank::build_matrix(upper, n);
}

void BM_Evm(benchmark::State& state) {
  const pcrank::PCMatrix c = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pcrank::evm(c));
}
BENCHMARK(BM_Evm)->Arg(4)->Arg(10)->Arg(50);

void BM_Gmm(benchmark::State& state) {
  const pcrank::PCMatrix c = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pcrank::gmm(c));
}
BENCHMARK(BM_Gmm)->Arg(4)->Arg(10)->Arg(50);

void BM_KoczkodajKi(benchmark::State& state) {
  const pcrank::PCMatrix c = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pcrank::koczkodaj_ki(c));
}
BENCHMARK(BM_KoczkodajKi)->Arg(10)->Arg(50);

void BM_Compatibility(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const pcrank::PCMatrix a = random_matrix(n);
  const pcrank::PCMatrix b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(pcrank::compatibility(a, b));
}
BENCHMARK(BM_Compatibility)->Arg(10)->Arg(50);

void BM_SmallExperiment(benchmark::State& state) {
  pcrank::ExperimentConfig cfg;
  cfg.n = 4;
  cfg.d_grid = pcrank::ExperimentConfig::make_grid(1.0, 10.0, 1.0);
  cfg.samples_per_d = 20;
  for (auto _ : state) benchmark::DoNotOptimize(pcrank::run_experiment(cfg));
}
BENCHMARK(BM_SmallExperiment)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
