/// @file search.hpp
/// Tour representation, biased randomized tour construction, and the
/// sequential k-opt improvement procedure.
///
/// A move alternates removed tour edges with added candidate edges,
/// closing back to the start city. Two rules drive the search: the close
/// must yield a single Hamiltonian cycle, and the cumulative gain must
/// stay positive at every depth. The first gainful closable move wins.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "mabbtsp/candidate.hpp"
#include "mabbtsp/tsplib.hpp"

namespace mabb {

class Tour {
  public:
    Tour(const Instance& inst, std::vector<int> order);

    int n() const { return static_cast<int>(order_.size()); }
    std::int64_t length() const { return length_; }
    const std::vector<int>& order() const { return order_; }
    int position(int city) const { return pos_[city]; }

    int succ(int city) const { return order_[next_index(pos_[city])]; }
    int pred(int city) const { return order_[prev_index(pos_[city])]; }

    /// True when a and b are neighbors on the tour.
    bool adjacent(int a, int b) const {
        int pa = pos_[a];
        return order_[next_index(pa)] == b || order_[prev_index(pa)] == b;
    }

    /// Replace the order wholesale and adjust the cached length by the
    /// move's gain. Used by apply_move.
    void replace(std::vector<int> new_order, std::int64_t gain);

    /// Recompute the length from scratch (consistency checks).
    std::int64_t recompute_length() const { return tour_length(*inst_, order_); }

    const Instance& instance() const { return *inst_; }

  private:
    int next_index(int i) const { return i + 1 == n() ? 0 : i + 1; }
    int prev_index(int i) const { return i == 0 ? n() - 1 : i - 1; }

    const Instance* inst_;
    std::vector<int> order_;
    std::vector<int> pos_;
    std::int64_t length_ = 0;
};

/// A sequential k-opt move: the alternating city sequence t_1..t_2k.
/// Removed edges are (t_1,t_2), (t_3,t_4), ...; added edges are
/// (t_2,t_3), ..., plus the closing edge (t_2k, t_1).
struct Move {
    std::vector<int> cities;
    std::int64_t gain = 0;
    int depth() const { return static_cast<int>(cities.size()) / 2; }
};

/// Greedy candidate-first construction. With no best tour: start at a
/// random city, repeatedly take the first unvisited candidate, falling
/// back to the nearest unvisited city. With a best tour: prefer unvisited
/// candidates that are also best-tour neighbors of the current city.
Tour choose_initial_tour(const Instance& inst, const Tour* best, const CandidateSets& sets,
                         std::mt19937_64& rng);

/// First improving sequential move of depth <= k_max starting at city
/// start, or nothing if that city yields no gain.
std::optional<Move> sequential_step(const Tour& tour, int start, const CandidateSets& sets,
                                    int k_max);

/// Execute a move found by sequential_step.
void apply_move(Tour& tour, const Move& move);

/// Repeat first-improvement sequential k-opt from every city (with
/// don't-look bits) until no improving move remains. Never increases the
/// tour length.
void lin_kernighan(Tour& tour, const CandidateSets& sets, int k_max);

} // namespace mabb
