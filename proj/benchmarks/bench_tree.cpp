#include <benchmark/benchmark.h>

#include "kakeya/dyadic_tree.hpp"
#include "random_gen.hpp"

using namespace kakeya;

namespace {

void BM_split_number(benchmark::State& state) {
  DyadicTree t = testgen::random_tree(11, static_cast<unsigned>(state.range(0)));
  for (auto _ : state) {
    SplitProfile p = split_number(t);
    benchmark::DoNotOptimize(p.tree);
  }
}

void BM_split_oracle_complete(benchmark::State& state) {
  DyadicTree t = DyadicTree::complete(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) {
    SplitOracle oracle;  // fresh memo each round: measures the full enumeration
    SplitProfile p = oracle.profile(t);
    benchmark::DoNotOptimize(p.tree);
  }
}

void BM_prune_bateman(benchmark::State& state) {
  DyadicTree t = DyadicTree::complete(static_cast<unsigned>(state.range(0)));
  unsigned n = split_number(t).tree;
  for (auto _ : state) {
    DyadicTree p = prune_bateman(t, n);
    benchmark::DoNotOptimize(p.size());
  }
}

}  // namespace

BENCHMARK(BM_split_number)->Arg(8)->Arg(12);
BENCHMARK(BM_split_oracle_complete)->Arg(3)->Arg(4);
BENCHMARK(BM_prune_bateman)->Arg(4)->Arg(6);
