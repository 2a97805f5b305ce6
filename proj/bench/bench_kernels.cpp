// Parallel kernels against their serial reference implementations.
// Run with --benchmark_filter=... ; the worker count follows DIVSUM_BENCH_THREADS.

#include <benchmark/benchmark.h>

#include <cstdlib>

#include "divsum/divisor.hpp"
#include "divsum/floor_sum.hpp"
#include "divsum/harmonic.hpp"
#include "divsum/main_term.hpp"
#include "divsum/parallel.hpp"
#include "divsum/reference.hpp"

using namespace divsum;

namespace {

void set_workers() {
  if (const char* t = std::getenv("DIVSUM_BENCH_THREADS")) parallel::set_threads(std::atoi(t));
}

void BM_SieveParallel(benchmark::State& state) {
  set_workers();
  const auto hi = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(divisor_sieve(1, hi).values.data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SieveParallel)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

void BM_SieveReference(benchmark::State& state) {
  const auto hi = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::divisor_prefix(hi).data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SieveReference)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

void BM_SumBlocked(benchmark::State& state) {
  set_workers();
  const auto x = static_cast<std::uint64_t>(state.range(0));
  const Exponent c = Exponent::rational(3, 2);
  const std::uint64_t N = optimal_N(x, c);
  for (auto _ : state) benchmark::DoNotOptimize(sum_blocked(x, c, N).value);
}
BENCHMARK(BM_SumBlocked)->Arg(1'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);

void BM_SumDirect(benchmark::State& state) {
  set_workers();
  const auto x = static_cast<std::uint64_t>(state.range(0));
  const Exponent c = Exponent::rational(3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(sum_direct(x, c).value);
}
BENCHMARK(BM_SumDirect)->Arg(1'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);

void BM_SumNaive(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  const Exponent c = Exponent::rational(3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(reference::sum_naive(x, c));
}
BENCHMARK(BM_SumNaive)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_DcPartialParallel(benchmark::State& state) {
  set_workers();
  const Exponent c = Exponent::rational(2, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(dc_partial(c, static_cast<std::uint64_t>(state.range(0))).get());
}
BENCHMARK(BM_DcPartialParallel)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

void BM_DcPartialReference(benchmark::State& state) {
  const Exponent c = Exponent::rational(2, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        reference::dc_partial(c, static_cast<std::uint64_t>(state.range(0))).get());
}
BENCHMARK(BM_DcPartialReference)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

void BM_ExpSumParallel(benchmark::State& state) {
  set_workers();
  const ExpSumSpec spec{static_cast<std::uint64_t>(state.range(0)), 7, 100'000'000,
                        Exponent::rational(1, 1), 0};
  for (auto _ : state) benchmark::DoNotOptimize(exp_sum_divisor(spec).magnitude);
}
BENCHMARK(BM_ExpSumParallel)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_ExpSumReference(benchmark::State& state) {
  const ExpSumSpec spec{static_cast<std::uint64_t>(state.range(0)), 7, 100'000'000,
                        Exponent::rational(1, 1), 0};
  for (auto _ : state) benchmark::DoNotOptimize(reference::exp_sum(spec));
}
BENCHMARK(BM_ExpSumReference)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
