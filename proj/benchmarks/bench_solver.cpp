#include "infosell/lp_oracle.hpp"
#include "infosell/model.hpp"
#include "infosell/optimal_mechanism.hpp"
#include "infosell/virtual_value.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace {

using namespace infosell;

void BM_SolveMixed(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Instance inst = mixed_example(n, n);
    for (auto _ : state) benchmark::DoNotOptimize(solve(inst));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveMixed)->Arg(25)->Arg(100)->Arg(400)->Complexity();

void BM_SolveLowTail(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Instance inst = low_tail_example(n, n);
    for (auto _ : state) benchmark::DoNotOptimize(solve(inst));
}
BENCHMARK(BM_SolveLowTail)->Arg(100)->Arg(400);

void BM_IronPivot(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Instance inst = mixed_example(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(ironed_pivot(inst.types, 0.5));
}
BENCHMARK(BM_IronPivot)->Arg(100)->Arg(1000)->Arg(10000);

void BM_OracleRandom(benchmark::State& state) {
    std::mt19937_64 rng(11);
    std::vector<Instance> pool;
    for (int k = 0; k < 32; ++k) pool.push_back(random_instance(rng));
    std::size_t k = 0;
    for (auto _ : state) benchmark::DoNotOptimize(solve_oracle(pool[k++ % pool.size()]));
}
BENCHMARK(BM_OracleRandom);

void BM_OracleTable(benchmark::State& state) {
    const Instance inst = table_instance();
    for (auto _ : state) benchmark::DoNotOptimize(solve_oracle(inst));
}
BENCHMARK(BM_OracleTable);

} // namespace

BENCHMARK_MAIN();
