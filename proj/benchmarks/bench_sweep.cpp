#include <benchmark/benchmark.h>

#include "kakeya/sweep.hpp"
#include "random_gen.hpp"

using namespace kakeya;

namespace {

void BM_union_measure_dyadic(benchmark::State& state) {
  ParallelogramUnion u = testgen::random_union(7, static_cast<std::size_t>(state.range(0)), true);
  for (auto _ : state) {
    Rat area = union_measure(u, Rat(-8), Rat(8));
    benchmark::DoNotOptimize(area);
  }
}

void BM_union_measure_general(benchmark::State& state) {
  ParallelogramUnion u = testgen::random_union(7, static_cast<std::size_t>(state.range(0)), false);
  for (auto _ : state) {
    Rat area = union_measure(u, Rat(-40), Rat(40));
    benchmark::DoNotOptimize(area);
  }
}

}  // namespace

BENCHMARK(BM_union_measure_dyadic)->Arg(8)->Arg(32)->Arg(64);
BENCHMARK(BM_union_measure_general)->Arg(8)->Arg(16);
