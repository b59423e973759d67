// Serial reference kernels against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <cmath>

#include "fqmm/fqmm.hpp"
#include "fqmm/reference.hpp"

namespace {

fqmm::PiecewiseConstantFn input(int level) {
  fqmm::PiecewiseConstantFn f(level);
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = std::sin(0.37 * static_cast<double>(j));
  return f;
}

void BM_ApplyCGridSerial(benchmark::State& state) {
  const auto f = input(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fqmm::serial::apply_c_grid(f));
}

void BM_ApplyCGrid(benchmark::State& state) {
  const auto f = input(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fqmm::apply_c_grid(f));
}

void BM_FastApplyCSerial(benchmark::State& state) {
  const auto c = fqmm::haar_forward(input(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(fqmm::serial::fast_apply_c(c));
}

void BM_FastApplyC(benchmark::State& state) {
  const auto c = fqmm::haar_forward(input(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(fqmm::fast_apply_c(c));
}

void BM_HaarForwardSerial(benchmark::State& state) {
  const auto f = input(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fqmm::serial::haar_forward(f));
}

void BM_HaarForward(benchmark::State& state) {
  const auto f = input(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fqmm::haar_forward(f));
}

void BM_BTransformSerial(benchmark::State& state) {
  const auto c = fqmm::haar_forward(input(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(fqmm::serial::b_transform(c));
}

void BM_BTransform(benchmark::State& state) {
  const auto c = fqmm::haar_forward(input(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(fqmm::b_transform(c));
}

void BM_ApplyCKSerial(benchmark::State& state) {
  const auto op = fqmm::build_ck(static_cast<int>(state.range(0)), 1.0);
  const std::vector<double> v(op.dim(), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(fqmm::serial::apply_ck(op, v));
}

void BM_ApplyCK(benchmark::State& state) {
  const auto op = fqmm::build_ck(static_cast<int>(state.range(0)), 1.0);
  const std::vector<double> v(op.dim(), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(fqmm::apply_ck(op, v));
}

void BM_EvolveClosedSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f0 = fqmm::coherent_wigner({-6, 6, -6, 6, n, n}, 1.0, 0.0, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(fqmm::serial::evolve_closed_form(f0, {1.0, 0.5, 1.0}));
}

void BM_EvolveClosed(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f0 = fqmm::coherent_wigner({-6, 6, -6, 6, n, n}, 1.0, 0.0, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(fqmm::evolve_closed_form(f0, {1.0, 0.5, 1.0}));
}

}  // namespace

BENCHMARK(BM_ApplyCGridSerial)->DenseRange(14, 20, 2);
BENCHMARK(BM_ApplyCGrid)->DenseRange(14, 20, 2);
BENCHMARK(BM_FastApplyCSerial)->DenseRange(14, 20, 2);
BENCHMARK(BM_FastApplyC)->DenseRange(14, 20, 2);
BENCHMARK(BM_HaarForwardSerial)->DenseRange(14, 20, 2);
BENCHMARK(BM_HaarForward)->DenseRange(14, 20, 2);
BENCHMARK(BM_BTransformSerial)->DenseRange(14, 20, 2);
BENCHMARK(BM_BTransform)->DenseRange(14, 20, 2);
BENCHMARK(BM_ApplyCKSerial)->DenseRange(12, 18, 2);
BENCHMARK(BM_ApplyCK)->DenseRange(12, 18, 2);
BENCHMARK(BM_EvolveClosedSerial)->Arg(256)->Arg(512);
BENCHMARK(BM_EvolveClosed)->Arg(256)->Arg(512);

BENCHMARK_MAIN();
