#include "mabbtsp/candidate.hpp"

#include <stdexcept>

namespace mabb {

CandidateSets build_candidate_sets(const AlphaTable& alpha, const Instance& inst,
                                   int candidate_size) {
    int n = inst.n();
    if (candidate_size < 1 || candidate_size > n - 1)
        throw UsageError("build_candidate_sets: candidate_size must be in [1, n-1]");

    CandidateSets sets(n, candidate_size);
    std::vector<CandidateEntry> pool;
    for (int city = 0; city < n; ++city) {
        auto near = alpha.neighbors(city);
        if (static_cast<int>(near.size()) < candidate_size)
            throw std::logic_error("build_candidate_sets: alpha table covers only " +
                                   std::to_string(near.size()) + " neighbors of city " +
                                   std::to_string(city) + ", need " +
                                   std::to_string(candidate_size) + " (k_near too small)");
        pool.clear();
        pool.reserve(near.size());
        for (const auto& e : near)
            pool.push_back({e.to, e.alpha, e.dist, e.alpha});
        std::stable_sort(pool.begin(), pool.end(),
                         [](const CandidateEntry& a, const CandidateEntry& b) {
                             if (a.alpha != b.alpha)
                                 return a.alpha < b.alpha;
                             if (a.dist != b.dist)
                                 return a.dist < b.dist;
                             return a.to < b.to;
                         });
        auto list = sets.of(city);
        for (int t = 0; t < candidate_size; ++t)
            list[t] = pool[t];
    }
    return sets;
}

} // namespace mabb
