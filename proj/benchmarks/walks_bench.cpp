#include <benchmark/benchmark.h>

#include "walklab/distribution.hpp"
#include "walklab/walks.hpp"

namespace {

void BM_Convolve(benchmark::State& state, const char* spec) {
  const auto p = walklab::Presentation::parse(spec);
  const auto mu = walklab::SymmetricMeasure::uniform(p);
  const int n = static_cast<int>(state.range(0));
  std::size_t support = 0;
  for (auto _ : state) {
    const auto d = walklab::convolve_power(p, mu, n);
    support = d.size();
    benchmark::DoNotOptimize(walklab::entropy(d));
  }
  state.counters["support"] = static_cast<double>(support);
}
BENCHMARK_CAPTURE(BM_Convolve, free2, "free:2")->Arg(8)->Arg(10)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Convolve, lfgroup4, "lfgroup:4")->Arg(7)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Convolve, lfsemigroup10, "lfsemigroup:10")->Arg(8)
    ->Unit(benchmark::kMillisecond);

void BM_SampleWalk(benchmark::State& state, const char* spec) {
  const auto p = walklab::Presentation::parse(spec);
  const auto mu = walklab::SymmetricMeasure::uniform(p);
  const int steps = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(walklab::sample_walk(p, mu, steps, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK_CAPTURE(BM_SampleWalk, free2, "free:2")->Arg(10'000);
BENCHMARK_CAPTURE(BM_SampleWalk, abelian2, "abelian:2")->Arg(10'000);
BENCHMARK_CAPTURE(BM_SampleWalk, lfgroup6, "lfgroup:6")->Arg(10'000);

}  // namespace
