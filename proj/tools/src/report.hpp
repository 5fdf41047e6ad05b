// Human tables, JSON reports, and the bandit trace CSV.

#pragma once

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "mabbtsp/solver.hpp"

namespace mabbcli {

inline void print_row_header() {
    std::printf("%-14s %-10s %-12s %-8s %-12s %-14s %-9s %-9s\n", "Instance", "Optimum", "Mode",
                "Success", "Best", "Average", "Trials", "Time(s)");
}

inline void print_row(const std::string& instance, const std::optional<std::int64_t>& optimum,
                      const std::string& mode, const mabb::BatchSummary& s) {
    std::string opt_str = optimum ? std::to_string(*optimum) : "-";
    std::string success = optimum ? std::to_string(s.success_count) + "/" + std::to_string(s.runs)
                                  : "-";
    std::printf("%-14s %-10s %-12s %-8s %-12lld %-14.1f %-9.1f %-9.2f\n", instance.c_str(),
                opt_str.c_str(), mode.c_str(), success.c_str(),
                static_cast<long long>(s.best), s.average, s.mean_trials, s.mean_time);
}

inline nlohmann::json params_json(const mabb::Params& p) {
    return {
        {"mode", mabb::mode_name(p.mode, p.fixed_w)},
        {"max_trials", p.max_trials},
        {"bs", p.bs},
        {"arms", p.arms},
        {"step_size", p.step_size},
        {"ucb_c", p.ucb_c},
        {"gamma", p.gamma},
        {"candidate_size", p.candidate_size},
        {"k_max", p.k_max},
        {"seed", p.seed},
    };
}

inline nlohmann::json run_json(int index, const mabb::RunResult& rr, bool with_tour) {
    nlohmann::json j{
        {"run", index},
        {"best_length", rr.best_length},
        {"trials", rr.trials_used},
        {"time_seconds", rr.wall_seconds},
        {"lower_bound", rr.lower_bound},
    };
    if (rr.reached_optimum)
        j["reached_optimum"] = *rr.reached_optimum;
    else
        j["reached_optimum"] = nullptr;
    if (with_tour) {
        nlohmann::json tour = nlohmann::json::array();
        for (int c : rr.best_tour)
            tour.push_back(c + 1); // 1-based city ids on the wire
        j["best_tour"] = std::move(tour);
    }
    return j;
}

inline nlohmann::json summary_json(const mabb::BatchSummary& s) {
    nlohmann::json j{
        {"runs", s.runs},
        {"best", s.best},
        {"average", s.average},
        {"mean_trials", s.mean_trials},
        {"mean_time", s.mean_time},
    };
    if (s.optimum) {
        j["optimum"] = *s.optimum;
        j["success"] = s.success_count;
    } else {
        j["optimum"] = nullptr;
        j["success"] = nullptr;
    }
    return j;
}

inline void write_trace_csv(const std::string& path, int arms,
                            const std::vector<std::pair<int, const mabb::RunResult*>>& runs) {
    std::ofstream out(path);
    out << "run,trial,arm,w,reward";
    for (int a = 1; a <= arms; ++a)
        out << ",v" << a;
    out << "\n";
    out.precision(17);
    for (const auto& [index, rr] : runs) {
        for (const auto& rec : rr->bandit_trace) {
            out << index << ',' << rec.trial << ',' << (rec.arm + 1) << ',' << rec.w << ','
                << rec.reward;
            for (double v : rec.values)
                out << ',' << v;
            out << "\n";
        }
    }
}

} // namespace mabbcli
