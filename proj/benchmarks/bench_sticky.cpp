#include <benchmark/benchmark.h>

#include "kakeya/kakeya_set.hpp"

using namespace kakeya;

namespace {

void BM_sticky_sample(benchmark::State& state) {
  ExtendedTree ext = extend_pruned(DyadicTree::complete(static_cast<unsigned>(state.range(0))),
                                   static_cast<unsigned>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    StickyMap sigma = sticky_sample(ext, seed++);
    benchmark::DoNotOptimize(sigma.k());
  }
}

void BM_build_kakeya_trial(benchmark::State& state) {
  unsigned k = static_cast<unsigned>(state.range(0));
  ExtendedTree ext = extend_pruned(DyadicTree::complete(k), k);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    KakeyaReport r = build_kakeya(ext, sticky_sample(ext, seed++));
    benchmark::DoNotOptimize(r.m1);
  }
}

}  // namespace

BENCHMARK(BM_sticky_sample)->Arg(4)->Arg(6);
BENCHMARK(BM_build_kakeya_trial)->Arg(3)->Arg(5)->Arg(6);

BENCHMARK_MAIN();
