// Microbenchmarks for the trial path: construction, k-opt improvement,
// candidate re-sorting, and whole solver trials.

#include <benchmark/benchmark.h>

#include <numeric>
#include <utility>
#include <vector>

#include "mabbtsp/metric.hpp"
#include "mabbtsp/rng.hpp"
#include "mabbtsp/search.hpp"
#include "mabbtsp/solver.hpp"

namespace {

using namespace mabb;

Instance random_instance(int n, std::uint64_t seed = 11, int range = 100000) {
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
    return Instance::from_coords("bench", WeightKind::Euc2D, std::move(pts));
}

void BM_lin_kernighan_trial(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Instance inst = random_instance(n);
    Params params;
    SolverContext ctx(inst, params);
    std::uint64_t trial = 0;
    for (auto _ : state) {
        std::mt19937_64 rng = make_rng(1, ++trial);
        Tour tour = choose_initial_tour(inst, nullptr, ctx.base_sets(), rng);
        lin_kernighan(tour, ctx.base_sets(), params.k_max);
        benchmark::DoNotOptimize(tour.length());
    }
}
BENCHMARK(BM_lin_kernighan_trial)->Arg(200)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_resort_candidates(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Instance inst = random_instance(n);
    Params params;
    SolverContext ctx(inst, params);
    CandidateSets sets = ctx.base_sets();
    BackboneStore backbone(n);
    std::vector<int> tour(n);
    std::iota(tour.begin(), tour.end(), 0);
    backbone.record_tour(tour);
    for (auto _ : state) {
        MetricSnapshot snap = snapshot_ranges(sets, backbone, 0.5);
        resort_candidates(sets, [&](int from, const CandidateEntry& e) {
            return combined_score(e.alpha, bd_value(e.dist, backbone.frequency(from, e.to)), snap);
        });
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_resort_candidates)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_solve_full(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Instance inst = random_instance(n);
    Params params;
    params.bs = 20;
    params.max_trials = 100;
    SolverContext ctx(inst, params);
    int run = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(solve(ctx, params, ++run));
}
BENCHMARK(BM_solve_full)->Arg(200)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
