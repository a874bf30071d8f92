// Serial reference vs OpenMP kernels.

#include "plancherel/asymptotics.hpp"
#include "plancherel/rsk_sampler.hpp"
#include "plancherel/wigner.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace plancherel;

RegularFamilyLimit diagonal_limit() {
  RegularFamilyLimit l;
  l.etas = {1.0};
  l.overlaps = Eigen::MatrixXd::Constant(1, 1, 1.0);
  return l;
}

void BM_QuadratureSerial(benchmark::State& state) {
  const auto l = diagonal_limit();
  for (auto _ : state) benchmark::DoNotOptimize(theorem2_covariance_serial(2, 2, l, 0, 0, 1e-10).value);
}

void BM_QuadratureParallel(benchmark::State& state) {
  const auto l = diagonal_limit();
  for (auto _ : state) benchmark::DoNotOptimize(theorem2_covariance(2, 2, l, 0, 0, 1e-10).value);
}

SamplerConfig sampler_config() {
  SamplerConfig c;
  c.L = 50;
  c.replicas = 200;
  c.sequences = {SequenceRule::identity(), SequenceRule::arithmetic(2, 0)};
  c.orders = {1, 2};
  return c;
}

void BM_SamplerSerial(benchmark::State& state) {
  const auto c = sampler_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_batch_serial(c).raw.sum());
}

void BM_SamplerParallel(benchmark::State& state) {
  const auto c = sampler_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(c).raw.sum());
}

WignerConfig wigner_config() {
  const std::vector<double> fr{0.0, 0.5, 1.0};
  return overlap_family(200, 100, fr, 1, 100);
}

void BM_WignerSerial(benchmark::State& state) {
  const auto c = wigner_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_wigner_serial(c).traces.sum());
}

void BM_WignerParallel(benchmark::State& state) {
  const auto c = wigner_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_wigner(c).traces.sum());
}

}  // namespace

BENCHMARK(BM_QuadratureSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadratureParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SamplerSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SamplerParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WignerSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WignerParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
