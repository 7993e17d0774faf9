#include <benchmark/benchmark.h>

#include "jatam/enumerate.hpp"
#include "jatam/evolve.hpp"

namespace {

using namespace jatam;

// Items [0, n) of S(2,8) at k = 8.
constexpr std::uint64_t kItems = 1 << 14;

EnumerateParams enum_params(int workers) {
    EnumerateParams p;
    p.classify.redundancy = 8;
    p.workers = workers;
    return p;
}

void BM_ClassifySerial(benchmark::State& state) {
    const SearchSpace s(2, 8);
    const auto p = enum_params(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(classify_items_serial(s, p, 0, kItems));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kItems));
}
BENCHMARK(BM_ClassifySerial)->Unit(benchmark::kMillisecond);

void BM_ClassifyParallel(benchmark::State& state) {
    const SearchSpace s(2, 8);
    const auto p = enum_params(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(classify_items(s, p, 0, kItems));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kItems));
}
BENCHMARK(BM_ClassifyParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_MutatePoisson(benchmark::State& state) {
    Genome g(static_cast<std::size_t>(state.range(0)));
    SplitMix64 rng(1);
    Mutator m(0.5);
    for (auto _ : state) {
        m(g, rng);
        benchmark::DoNotOptimize(g.data());
    }
}
BENCHMARK(BM_MutatePoisson)->Arg(32)->Arg(1024);

void BM_MutateBitwise(benchmark::State& state) {
    Genome g(static_cast<std::size_t>(state.range(0)));
    SplitMix64 rng(1);
    const double mu = 0.5 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        mutate_bitwise(g, mu, rng);
        benchmark::DoNotOptimize(g.data());
    }
}
BENCHMARK(BM_MutateBitwise)->Arg(32)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
