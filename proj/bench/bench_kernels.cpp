// Serial reference kernels against their OpenMP counterparts.
// Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include <vector>

#include "ergo/kernels.hpp"
#include "ergo/random.hpp"

namespace {

using namespace ergo;

std::vector<double> incomes(std::size_t n) {
  std::vector<double> x(n);
  kernels::serial::sample_lognormal(x, 9.0, 0.8, RandomSource(1), 0);
  return x;
}

template <bool Parallel>
void sample_lognormal(benchmark::State& state) {
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  const RandomSource rng(2);
  std::uint64_t step = 0;
  for (auto _ : state) {
    if constexpr (Parallel) kernels::omp::sample_lognormal(x, 9.0, 0.8, rng, step++);
    else kernels::serial::sample_lognormal(x, 9.0, 0.8, rng, step++);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void exact_step(benchmark::State& state) {
  auto x = incomes(static_cast<std::size_t>(state.range(0)));
  const RandomSource rng(3);
  std::uint64_t step = 0;
  for (auto _ : state) {
    if constexpr (Parallel) kernels::omp::exact_step(x, 0.0, 1e-3, rng, step++);
    else kernels::serial::exact_step(x, 0.0, 1e-3, rng, step++);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void euler_step(benchmark::State& state) {
  auto x = incomes(static_cast<std::size_t>(state.range(0)));
  const RandomSource rng(4);
  std::uint64_t step = 0;
  for (auto _ : state) {
    auto r = Parallel ? kernels::omp::euler_step(x, 0.0, 1e-3, rng, step++)
                      : kernels::serial::euler_step(x, 0.0, 1e-3, rng, step++);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void sum(benchmark::State& state) {
  const auto x = incomes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? kernels::omp::sum(x) : kernels::serial::sum(x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void sum_log(benchmark::State& state) {
  const auto x = incomes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? kernels::omp::sum_log(x) : kernels::serial::sum_log(x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void sum_gap_terms(benchmark::State& state) {
  const auto x = incomes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? kernels::omp::sum_gap_terms(x, 9.0)
                                      : kernels::serial::sum_gap_terms(x, 9.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

#define ERGO_BENCH_PAIR(fn)                                                   \
  BENCHMARK(fn<false>)->Name(#fn "/serial")->RangeMultiplier(16)->Range(1 << 12, 1 << 20); \
  BENCHMARK(fn<true>)->Name(#fn "/omp")->RangeMultiplier(16)->Range(1 << 12, 1 << 20)

ERGO_BENCH_PAIR(sample_lognormal);
ERGO_BENCH_PAIR(exact_step);
ERGO_BENCH_PAIR(euler_step);
ERGO_BENCH_PAIR(sum);
ERGO_BENCH_PAIR(sum_log);
ERGO_BENCH_PAIR(sum_gap_terms);

BENCHMARK_MAIN();
