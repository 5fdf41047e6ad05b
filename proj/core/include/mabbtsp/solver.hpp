/// @file solver.hpp
/// Trial loop orchestration: warm-up trials under plain alpha ordering
/// collect backbone counts, then the bandit picks a blend weight each
/// trial, candidate lists are re-sorted, and the k-opt search runs.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mabbtsp/backbone.hpp"
#include "mabbtsp/bandit.hpp"
#include "mabbtsp/candidate.hpp"
#include "mabbtsp/one_tree.hpp"
#include "mabbtsp/search.hpp"
#include "mabbtsp/tsplib.hpp"

namespace mabb {

enum class Mode {
    Mabb,   ///< bandit-selected blend weight per trial
    Lkh,    ///< pure alpha ordering, no backbone, no bandit
    FixedW, ///< constant blend weight, no bandit
};

struct Params {
    std::int64_t max_trials = 0; ///< 0 means "number of cities"
    int bs = 100;                ///< warm-up trials before the bandit acts
    int arms = 5;
    double step_size = 0.06;
    double ucb_c = 20.0;
    double gamma = 0.998;
    int candidate_size = 5;
    int k_max = 5;
    std::uint64_t seed = 1;
    Mode mode = Mode::Mabb;
    double fixed_w = 1.0; ///< used when mode == FixedW
    /// Early-exit target; falls back to the instance's registry optimum.
    std::optional<std::int64_t> optimum;
    bool collect_trace = false;

    void validate() const;
    int effective_candidate_size(int n) const {
        return candidate_size < n - 1 ? candidate_size : n - 1;
    }
    std::int64_t effective_max_trials(int n) const { return max_trials > 0 ? max_trials : n; }
};

Mode parse_mode(const std::string& text, double& fixed_w);
std::string mode_name(Mode mode, double fixed_w);

/// One bandit consultation (only trials after warm-up appear here).
struct TrialRecord {
    std::int64_t trial;
    int arm; ///< 0-based
    double w;
    double reward;
    std::vector<double> values; ///< V after the update
};

struct RunResult {
    std::int64_t best_length = 0;
    std::vector<int> best_tour;
    std::int64_t trials_used = 0;
    double wall_seconds = 0.0;
    std::optional<bool> reached_optimum;
    double lower_bound = 0.0;
    std::vector<TrialRecord> bandit_trace;
};

/// Per-trial observation hook for tests and tracing; arm is -1 when the
/// bandit was not consulted this trial.
struct TrialObservation {
    std::int64_t trial;
    const Tour& local_optimum;
    std::int64_t best_length;
    int arm;
    double w;
    double reward;
};
using TrialObserver = std::function<void(const TrialObservation&)>;

/// Instance preprocessing shared by all runs: penalty ascent, alpha
/// values, and the alpha-ordered base candidate sets.
class SolverContext {
  public:
    SolverContext(const Instance& inst, const Params& params);

    const Instance& instance() const { return *inst_; }
    const CandidateSets& base_sets() const { return sets_; }
    const AscentResult& ascent() const { return ascent_; }
    const AlphaTable& alpha() const { return alpha_; }
    double lower_bound() const { return ascent_.bound; }

  private:
    const Instance* inst_;
    AscentResult ascent_;
    AlphaTable alpha_;
    CandidateSets sets_;
};

/// One run of the trial loop; run_index selects the derived seed stream.
RunResult solve(const SolverContext& ctx, const Params& params, int run_index = 0,
                const TrialObserver* observer = nullptr);

/// Convenience: preprocess and run once.
RunResult solve(const Instance& inst, const Params& params);

struct BatchSummary {
    int runs = 0;
    int success_count = 0; ///< runs that reached the optimum (when known)
    std::optional<std::int64_t> optimum;
    std::int64_t best = 0;
    double average = 0.0;
    double mean_trials = 0.0;
    double mean_time = 0.0;
    std::vector<RunResult> results;
};

/// Repeated runs with seeds derived from params.seed + run index; results
/// are identical regardless of the job count.
BatchSummary run_batch(const SolverContext& ctx, const Params& params, int runs, int jobs = 1);
BatchSummary run_batch(const Instance& inst, const Params& params, int runs, int jobs = 1);

} // namespace mabb
