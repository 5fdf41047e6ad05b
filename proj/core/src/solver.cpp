#include "mabbtsp/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "mabbtsp/metric.hpp"
#include "mabbtsp/rng.hpp"

namespace mabb {

void Params::validate() const {
    if (max_trials < 0)
        throw UsageError("params: max_trials must be >= 0");
    if (bs < 1)
        throw UsageError("params: bs must be >= 1");
    if (arms < 2)
        throw UsageError("params: arms must be >= 2");
    if (step_size <= 0.0 || step_size > 1.0)
        throw UsageError("params: step size must be in (0, 1]");
    if (ucb_c < 0.0)
        throw UsageError("params: ucb-c must be >= 0");
    if (gamma <= 0.0 || gamma > 1.0)
        throw UsageError("params: gamma must be in (0, 1]");
    if (candidate_size < 1)
        throw UsageError("params: candidate size must be >= 1");
    if (k_max < 2 || k_max > 16)
        throw UsageError("params: k_max must be in [2, 16]");
    if (mode == Mode::FixedW && (fixed_w < 0.0 || fixed_w > 1.0))
        throw UsageError("params: fixed w must be in [0, 1]");
}

Mode parse_mode(const std::string& text, double& fixed_w) {
    if (text == "mabb")
        return Mode::Mabb;
    if (text == "lkh")
        return Mode::Lkh;
    if (text.rfind("fixed-w=", 0) == 0) {
        fixed_w = std::stod(text.substr(8));
        return Mode::FixedW;
    }
    throw UsageError("unknown mode: " + text + " (expected mabb, lkh, or fixed-w=X)");
}

std::string mode_name(Mode mode, double fixed_w) {
    switch (mode) {
    case Mode::Mabb:
        return "mabb";
    case Mode::Lkh:
        return "lkh";
    case Mode::FixedW: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "fixed-w=%g", fixed_w);
        return buf;
    }
    }
    return "?";
}

SolverContext::SolverContext(const Instance& inst, const Params& params)
    : inst_(&inst),
      ascent_(ascend_penalties(inst)),
      alpha_(alpha_values(inst, ascent_.tree, ascent_.pi,
                          std::min(inst.n() - 1,
                                   std::max(10, 2 * params.effective_candidate_size(inst.n()))))),
      sets_(build_candidate_sets(alpha_, inst, params.effective_candidate_size(inst.n()))) {
    params.validate();
}

RunResult solve(const SolverContext& ctx, const Params& params, int run_index,
                const TrialObserver* observer) {
    params.validate();
    const Instance& inst = ctx.instance();
    const int n = inst.n();
    const auto t_start = std::chrono::steady_clock::now();

    CandidateSets sets = ctx.base_sets(); // per-run copy; ordering mutates
    BackboneStore backbone(n);
    std::optional<Bandit> bandit;
    if (params.mode == Mode::Mabb)
        bandit.emplace(params.arms, params.step_size, params.ucb_c);

    std::optional<std::int64_t> target = params.optimum ? params.optimum : inst.known_optimum();

    RunResult rr;
    rr.lower_bound = ctx.lower_bound();

    std::optional<Tour> best;
    std::int64_t best_len = std::numeric_limits<std::int64_t>::max();

    const std::uint64_t run_seed = derive_seed(params.seed, static_cast<std::uint64_t>(run_index));
    const std::int64_t max_trials = params.effective_max_trials(n);
    std::int64_t trials_used = 0;

    auto resort_by_blend = [&](double w) {
        MetricSnapshot snap = snapshot_ranges(sets, backbone, w);
        resort_candidates(sets, [&](int from, const CandidateEntry& e) {
            return combined_score(e.alpha, bd_value(e.dist, backbone.frequency(from, e.to)), snap);
        });
    };

    for (std::int64_t t = 1; t <= max_trials; ++t) {
        trials_used = t;
        std::mt19937_64 rng = make_rng(run_seed, static_cast<std::uint64_t>(t));
        Tour tour = choose_initial_tour(inst, best ? &*best : nullptr, sets, rng);

        int arm = -1;
        double w = std::numeric_limits<double>::quiet_NaN();
        double reward = std::numeric_limits<double>::quiet_NaN();

        if (t <= params.bs || params.mode == Mode::Lkh) {
            lin_kernighan(tour, sets, params.k_max);
        } else if (params.mode == Mode::Mabb) {
            arm = bandit->select_arm();
            w = bandit->effective_weight(arm, t, params.bs, params.gamma);
            resort_by_blend(w);
            lin_kernighan(tour, sets, params.k_max);
            reward = bandit_reward(best_len, tour.length(), ctx.lower_bound());
            bandit->update_value(arm, reward);
            if (params.collect_trace)
                rr.bandit_trace.push_back({t, arm, w, reward, bandit->values()});
        } else { // FixedW
            w = params.fixed_w;
            resort_by_blend(w);
            lin_kernighan(tour, sets, params.k_max);
        }

        if (params.mode != Mode::Lkh)
            backbone.record_tour(tour.order());

        if (tour.length() < best_len) {
            best_len = tour.length();
            best = tour;
        }
        if (observer)
            (*observer)({t, tour, best_len, arm, w, reward});
        if (target && best_len <= *target)
            break;
    }

    rr.best_length = best_len;
    rr.best_tour = best->order();
    rr.trials_used = trials_used;
    if (target)
        rr.reached_optimum = best_len <= *target;
    rr.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rr;
}

RunResult solve(const Instance& inst, const Params& params) {
    SolverContext ctx(inst, params);
    return solve(ctx, params, 0);
}

BatchSummary run_batch(const SolverContext& ctx, const Params& params, int runs, int jobs) {
    if (runs < 1)
        throw UsageError("run_batch: runs must be >= 1");
    BatchSummary summary;
    summary.runs = runs;
    summary.optimum = params.optimum ? params.optimum : ctx.instance().known_optimum();
    summary.results.resize(runs);

    if (jobs <= 1) {
        for (int r = 0; r < runs; ++r)
            summary.results[r] = solve(ctx, params, r);
    } else {
        std::atomic<int> next{0};
        auto worker = [&]() {
            for (int r = next.fetch_add(1); r < runs; r = next.fetch_add(1))
                summary.results[r] = solve(ctx, params, r);
        };
        std::vector<std::thread> pool;
        int k = std::min(jobs, runs);
        pool.reserve(k);
        for (int i = 0; i < k; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    summary.best = std::numeric_limits<std::int64_t>::max();
    double len_sum = 0.0, trial_sum = 0.0, time_sum = 0.0;
    for (const auto& rr : summary.results) {
        summary.best = std::min(summary.best, rr.best_length);
        len_sum += static_cast<double>(rr.best_length);
        trial_sum += static_cast<double>(rr.trials_used);
        time_sum += rr.wall_seconds;
        if (rr.reached_optimum.value_or(false))
            ++summary.success_count;
    }
    summary.average = len_sum / runs;
    summary.mean_trials = trial_sum / runs;
    summary.mean_time = time_sum / runs;
    return summary;
}

BatchSummary run_batch(const Instance& inst, const Params& params, int runs, int jobs) {
    SolverContext ctx(inst, params);
    return run_batch(ctx, params, runs, jobs);
}

} // namespace mabb
