// Microbenchmarks for the preprocessing pipeline: cost functions, 1-tree
// construction, penalty ascent, and alpha computation.

#include <benchmark/benchmark.h>

#include <utility>
#include <vector>

#include "mabbtsp/one_tree.hpp"
#include "mabbtsp/rng.hpp"
#include "mabbtsp/tsplib.hpp"

namespace {

using namespace mabb;

Instance random_instance(int n, WeightKind kind, std::uint64_t seed = 7, int range = 100000) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(n);
    std::uint64_t s = seed;
    for (int i = 0; i < n; ++i) {
        s = splitmix64(s);
        double x = static_cast<double>(s % static_cast<std::uint64_t>(range));
        s = splitmix64(s);
        double y = static_cast<double>(s % static_cast<std::uint64_t>(range));
        pts.emplace_back(x, y);
    }
    return Instance::from_coords("bench", kind, std::move(pts));
}

void BM_cost(benchmark::State& state, WeightKind kind) {
    Instance inst = random_instance(6000, kind); // above the matrix cache limit
    std::uint64_t s = 3;
    for (auto _ : state) {
        s = splitmix64(s);
        int i = static_cast<int>(s % 6000);
        s = splitmix64(s);
        int j = static_cast<int>(s % 6000);
        if (i == j)
            j = (j + 1) % 6000;
        benchmark::DoNotOptimize(inst.cost(i, j));
    }
}
BENCHMARK_CAPTURE(BM_cost, euc2d, WeightKind::Euc2D);
BENCHMARK_CAPTURE(BM_cost, att, WeightKind::Att);
BENCHMARK_CAPTURE(BM_cost, geo, WeightKind::Geo);

void BM_minimum_one_tree(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Instance inst = random_instance(n, WeightKind::Euc2D);
    std::vector<double> pi(n, 0.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(minimum_one_tree(inst, pi));
    state.SetComplexityN(n);
}
BENCHMARK(BM_minimum_one_tree)->Arg(200)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ascend_penalties(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Instance inst = random_instance(n, WeightKind::Euc2D);
    for (auto _ : state)
        benchmark::DoNotOptimize(ascend_penalties(inst));
}
BENCHMARK(BM_ascend_penalties)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_alpha_values(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Instance inst = random_instance(n, WeightKind::Euc2D);
    AscentResult res = ascend_penalties(inst);
    for (auto _ : state)
        benchmark::DoNotOptimize(alpha_values(inst, res.tree, res.pi, 10));
}
BENCHMARK(BM_alpha_values)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
