#include "mabbtsp/bandit.hpp"

namespace mabb {

Bandit::Bandit(int arms, double step_size, double exploration_bias)
    : arms_(arms), step_(step_size), c_(exploration_bias), values_(arms, 0.0), pulls_(arms, 0) {
    if (arms < 2)
        throw UsageError("Bandit: need at least 2 arms");
    if (step_size <= 0.0 || step_size > 1.0)
        throw UsageError("Bandit: step size must be in (0, 1]");
}

Bandit::Bandit(int arms, double step_size, double exploration_bias, std::vector<double> values,
               std::vector<std::int64_t> pulls, std::int64_t total)
    : Bandit(arms, step_size, exploration_bias) {
    if (static_cast<int>(values.size()) != arms || static_cast<int>(pulls.size()) != arms)
        throw UsageError("Bandit: state vectors must have one entry per arm");
    values_ = std::move(values);
    pulls_ = std::move(pulls);
    total_ = total;
}

int Bandit::select_arm() {
    ++total_;
    int best = 0;
    double best_score = ucb_score(values_[0], pulls_[0], total_, c_);
    for (int i = 1; i < arms_; ++i) {
        double s = ucb_score(values_[i], pulls_[i], total_, c_);
        if (s > best_score) {
            best_score = s;
            best = i;
        }
    }
    ++pulls_[best];
    return best;
}

void Bandit::update_value(int arm, double r) {
    if (arm < 0 || arm >= arms_)
        throw UsageError("Bandit::update_value: arm out of range");
    values_[arm] += step_ * (r - values_[arm]);
}

} // namespace mabb
