/// @file backbone.hpp
/// Edge frequencies over all local optima recorded so far. An edge that
/// keeps showing up in local optima is treated as higher quality; counts
/// accumulate over the whole run with no decay.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>

#include "mabbtsp/tsplib.hpp"

namespace mabb {

class BackboneStore {
  public:
    explicit BackboneStore(int n) : n_(n) {}

    /// Count one Hamiltonian cycle: t += 1 and every tour edge's count
    /// += 1. Both edge directions hit the same counter.
    void record_tour(std::span<const int> order);

    /// Fraction of recorded optima containing edge (i, j); requires at
    /// least one recorded tour.
    double frequency(int i, int j) const {
        if (trials_ == 0)
            throw UsageError("BackboneStore::frequency: no tours recorded yet");
        return static_cast<double>(count(i, j)) / static_cast<double>(trials_);
    }

    std::int64_t count(int i, int j) const {
        auto it = counts_.find(key(i, j));
        return it == counts_.end() ? 0 : it->second;
    }

    std::int64_t trials() const { return trials_; }
    int n() const { return n_; }

    /// Sum of all edge counts; equals n * trials after every record.
    std::int64_t total_count() const;

    /// Debug dump, `i j count` per line with 1-based city ids.
    void dump(std::ostream& out) const;

  private:
    static std::uint64_t key(int i, int j) {
        auto lo = static_cast<std::uint64_t>(i < j ? i : j);
        auto hi = static_cast<std::uint64_t>(i < j ? j : i);
        return (lo << 32) | hi;
    }

    int n_;
    std::int64_t trials_ = 0;
    std::unordered_map<std::uint64_t, std::int64_t> counts_;
};

} // namespace mabb
