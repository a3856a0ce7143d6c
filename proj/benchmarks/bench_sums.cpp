#include <benchmark/benchmark.h>

#include "ostrowski/context.hpp"
#include "ostrowski/discrepancy.hpp"
#include "ostrowski/sums.hpp"

using namespace ostrowski;

namespace {

const AlphaContext& sqrt2() {
  static const AlphaContext c(AlphaSpec::sqrt(2));
  return c;
}

void BM_TSumClosed(benchmark::State& state) {
  const auto M = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(t_sum_closed(sqrt2(), M));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * M));
}
BENCHMARK(BM_TSumClosed)->RangeMultiplier(8)->Range(64, 1 << 21);

void BM_TSumNaive(benchmark::State& state) {
  const auto M = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(t_sum_naive(sqrt2(), M));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * M * M));
}
BENCHMARK(BM_TSumNaive)->RangeMultiplier(4)->Range(16, 1024);

void BM_RecipSum(benchmark::State& state) {
  const auto m = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(recip_sum(sqrt2(), m));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * m));
}
BENCHMARK(BM_RecipSum)->RangeMultiplier(8)->Range(64, 1 << 21);

void BM_DiscrepancyExact(benchmark::State& state) {
  const auto N = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(discrepancy_exact(sqrt2(), N));
}
BENCHMARK(BM_DiscrepancyExact)->RangeMultiplier(4)->Range(64, 4096);

// Per-term cost of exact big-number evaluation against the fixed-point stream.
void BM_FracExact(benchmark::State& state) {
  std::uint64_t m = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(frac_exact(sqrt2().cf(), Integer(static_cast<unsigned long>(m))));
    m = m * 6364136223846793005ull % 1'000'000'007ull + 1;
  }
}
BENCHMARK(BM_FracExact);

void BM_FracStream(benchmark::State& state) {
  FracStream stream(sqrt2().fixed(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(stream.next_absolute());
}
BENCHMARK(BM_FracStream);

}  // namespace

BENCHMARK_MAIN();
