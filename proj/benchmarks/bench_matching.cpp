#include <benchmark/benchmark.h>

#include "classmatch/audit.hpp"
#include "classmatch/distributions.hpp"
#include "classmatch/matching.hpp"
#include "classmatch/mechanisms.hpp"

using namespace classmatch;

namespace {

Instance makeInstance(int np, int k, int m, std::uint64_t seed) {
  return sampleInstance(DistributionSpec::uniform01(), std::vector<int>(k, np), m,
                        {seed, 0});
}

void BM_MaxWeightSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = 2 * n + 4;
  auto w = sampleUtilities(DistributionSpec::uniform01(), n, m, {1, 0});
  for (auto _ : state) {
    MaxWeightMatcher matcher(n, m, w);
    for (int r = 0; r < n; ++r) matcher.augmentBest();
    benchmark::DoNotOptimize(matcher.value());
  }
}
BENCHMARK(BM_MaxWeightSolve)->Arg(10)->Arg(50)->Arg(100);

void BM_RoundRobin(benchmark::State& state) {
  const int np = static_cast<int>(state.range(0));
  auto inst = makeInstance(np, 2, 2 * (np + 2), 2);
  for (auto _ : state) {
    auto res = roundRobin(inst);
    benchmark::DoNotOptimize(res.matching.pairs.size());
  }
}
BENCHMARK(BM_RoundRobin)->Arg(10)->Arg(25)->Arg(50)->Arg(100);

void BM_Audit(benchmark::State& state) {
  const int np = static_cast<int>(state.range(0));
  auto inst = makeInstance(np, 2, 2 * (np + 2), 3);
  auto rr = roundRobin(inst);
  for (auto _ : state) {
    AuditOptions opt;
    opt.cef1 = opt.mcef1 = false;
    auto rep = audit(inst, rr.matching, opt);
    benchmark::DoNotOptimize(rep.class_ef.value());
  }
}
BENCHMARK(BM_Audit)->Arg(10)->Arg(25)->Arg(50)->Arg(100);

void BM_RemovalValues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto w = sampleUtilities(DistributionSpec::uniform01(), n, n, {4, 0});
  MaxWeightMatcher matcher(n, n, w);
  for (int r = 0; r < n; ++r) matcher.augmentBest();
  for (auto _ : state) {
    auto vals = matcher.removalValues();
    benchmark::DoNotOptimize(vals.data());
  }
}
BENCHMARK(BM_RemovalValues)->Arg(10)->Arg(50)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
