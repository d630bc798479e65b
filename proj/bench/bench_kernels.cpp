// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <vector>

#include "hyperbasis/kernels.hpp"
#include "hyperbasis/reference.hpp"

using namespace hyperbasis;

namespace {

constexpr std::size_t kDim = 10000;

std::vector<Hypervector> make(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Hypervector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(Hypervector::random(kDim, rng));
  return out;
}

void BM_PairwiseReference(benchmark::State& state) {
  const auto v = make(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(reference::pairwise_similarity(v));
}

void BM_PairwiseKernel(benchmark::State& state) {
  const auto v = make(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::pairwise_similarity(v));
}

void BM_NearestReference(benchmark::State& state) {
  const auto q = make(static_cast<std::size_t>(state.range(0)), 2);
  const auto c = make(100, 3);
  for (auto _ : state) benchmark::DoNotOptimize(reference::nearest_batch(q, c));
}

void BM_NearestKernel(benchmark::State& state) {
  const auto q = make(static_cast<std::size_t>(state.range(0)), 2);
  const auto c = make(100, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::nearest_batch(q, c));
}

void BM_AccumulateReference(benchmark::State& state) {
  const auto v = make(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(reference::accumulate(v, kDim));
}

void BM_AccumulateKernel(benchmark::State& state) {
  const auto v = make(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::accumulate(v, kDim));
}

}  // namespace

BENCHMARK(BM_PairwiseReference)->Arg(12)->Arg(72)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairwiseKernel)->Arg(12)->Arg(72)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NearestReference)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NearestKernel)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AccumulateReference)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AccumulateKernel)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
