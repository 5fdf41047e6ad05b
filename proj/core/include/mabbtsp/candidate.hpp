/// @file candidate.hpp
/// Per-city ordered candidate lists. Membership is fixed at construction;
/// only the ordering changes between trials, driven by whatever edge score
/// the solver currently uses.

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "mabbtsp/one_tree.hpp"
#include "mabbtsp/tsplib.hpp"

namespace mabb {

struct CandidateEntry {
    int to;
    double alpha;
    std::int64_t dist;
    double score;
};

class CandidateSets {
  public:
    CandidateSets(int n, int candidate_size)
        : candidate_size_(candidate_size),
          flat_(static_cast<std::size_t>(n) * candidate_size) {}

    int n() const { return static_cast<int>(flat_.size()) / candidate_size_; }
    int candidate_size() const { return candidate_size_; }

    std::span<const CandidateEntry> of(int city) const {
        return {flat_.data() + static_cast<std::size_t>(city) * candidate_size_,
                static_cast<std::size_t>(candidate_size_)};
    }
    std::span<CandidateEntry> of(int city) {
        return {flat_.data() + static_cast<std::size_t>(city) * candidate_size_,
                static_cast<std::size_t>(candidate_size_)};
    }

    bool contains(int from, int to) const {
        for (const auto& e : of(from))
            if (e.to == to)
                return true;
        return false;
    }

  private:
    int candidate_size_;
    std::vector<CandidateEntry> flat_;
};

/// Top candidate_size neighbors per city by ascending alpha, ties broken
/// by distance then city index. Lists are directional, as in the alpha
/// table they come from.
CandidateSets build_candidate_sets(const AlphaTable& alpha, const Instance& inst,
                                   int candidate_size);

/// Re-sort every per-city list ascending by `scorer(from, entry)`.
/// Membership never changes; equal scores keep the (distance, index)
/// tie-break deterministic.
template <typename Scorer>
void resort_candidates(CandidateSets& sets, Scorer&& scorer) {
    for (int city = 0; city < sets.n(); ++city) {
        auto list = sets.of(city);
        for (auto& e : list)
            e.score = scorer(city, e);
        std::stable_sort(list.begin(), list.end(), [](const CandidateEntry& a,
                                                      const CandidateEntry& b) {
            if (a.score != b.score)
                return a.score < b.score;
            if (a.dist != b.dist)
                return a.dist < b.dist;
            return a.to < b.to;
        });
    }
}

} // namespace mabb
