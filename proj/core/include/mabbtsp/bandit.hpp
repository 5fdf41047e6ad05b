/// @file bandit.hpp
/// UCB arm selection over blend weights. Arm i carries the base weight
/// (i-1)/(m-1); the reward is the normalized improvement of the trial's
/// local optimum over the best tour so far.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mabbtsp/tsplib.hpp"

namespace mabb {

class Bandit {
  public:
    Bandit(int arms, double step_size, double exploration_bias);

    /// Restore a mid-run state (testing / checkpointing).
    Bandit(int arms, double step_size, double exploration_bias, std::vector<double> values,
           std::vector<std::int64_t> pulls, std::int64_t total);

    /// One UCB selection: N += 1 first, then argmax of
    /// V_i + c * sqrt(ln N / (n_i + 1)), ties to the lowest arm, and the
    /// chosen arm's pull count += 1. Returns the 0-based arm index.
    int select_arm();

    /// Exponential-recency update V_a += s * (r - V_a).
    void update_value(int arm, double r);

    /// Base weight of an arm: arm / (m - 1) for 0-based arms.
    double base_weight(int arm) const { return static_cast<double>(arm) / (arms_ - 1); }

    /// Per-trial blend weight w_arm * gamma^(t - bs); decays so the
    /// backbone share grows as trials accumulate.
    double effective_weight(int arm, std::int64_t t, std::int64_t bs, double gamma) const {
        return base_weight(arm) * std::pow(gamma, static_cast<double>(t - bs));
    }

    static double ucb_score(double value, std::int64_t pulls, std::int64_t total, double c) {
        return value + c * std::sqrt(std::log(static_cast<double>(total)) /
                                     static_cast<double>(pulls + 1));
    }

    int arms() const { return arms_; }
    std::int64_t total_selections() const { return total_; }
    std::int64_t pulls(int arm) const { return pulls_[arm]; }
    double value(int arm) const { return values_[arm]; }
    const std::vector<double>& values() const { return values_; }
    double step_size() const { return step_; }
    double exploration_bias() const { return c_; }

  private:
    int arms_;
    double step_;
    double c_;
    std::vector<double> values_;
    std::vector<std::int64_t> pulls_;
    std::int64_t total_ = 0;
};

/// Reward of a trial: (L(R*) - L(R)) / (L(R*) - L(T) + 1). Negative when
/// the trial regressed; never clipped.
inline double bandit_reward(std::int64_t len_best, std::int64_t len_new, double lower_bound) {
    return (static_cast<double>(len_best) - static_cast<double>(len_new)) /
           (static_cast<double>(len_best) - lower_bound + 1.0);
}

} // namespace mabb
