/// @file one_tree.hpp
/// Minimum 1-trees, subgradient penalty ascent for the Held-Karp lower
/// bound, and alpha values for near edges.
///
/// A 1-tree is a spanning tree over all cities except one special node,
/// plus the two cheapest edges joining that node back in. Its minimum
/// length under penalized costs C(i,j) = d(i,j) + pi_i + pi_j yields the
/// lower bound w(pi) = L(T(pi)) - 2*sum(pi). The alpha value of an edge
/// is the increase in minimum 1-tree length when the edge is forced in.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mabbtsp/tsplib.hpp"

namespace mabb {

struct OneTreeResult {
    /// Exactly n edges: the spanning tree over V \ {special_node} plus the
    /// two cheapest penalized edges at special_node.
    std::vector<std::pair<int, int>> edges;
    double length = 0.0;          ///< sum of penalized edge costs
    double bound = 0.0;           ///< length - 2 * sum(pi)
    std::vector<int> degrees;     ///< per-city degree in the 1-tree
    int special_node = -1;
    /// Spanning-tree parent links over V \ {special_node}; -1 for the
    /// root and for special_node itself.
    std::vector<int> parent;
    /// Penalized cost of the parent edge, aligned with `parent`.
    std::vector<double> parent_cost;
    /// Penalized cost of the second-cheapest 1-tree edge at special_node.
    double special_second_cost = 0.0;

    bool is_tour() const {
        for (int d : degrees)
            if (d != 2)
                return false;
        return true;
    }
};

/// Minimum 1-tree under penalized costs. The special node is the city
/// whose second-cheapest incident penalized edge is maximal (ties broken
/// by lowest index). Deterministic for fixed inputs.
OneTreeResult minimum_one_tree(const Instance& inst, std::span<const double> pi);

struct AscentResult {
    std::vector<double> pi;
    double bound = 0.0;
    OneTreeResult tree; ///< minimum 1-tree for `pi`
    int iterations = 0;
};

/// Subgradient ascent maximizing w(pi). Keeps the best bound seen; stops
/// when the 1-tree becomes a tour or the step schedule is exhausted.
AscentResult ascend_penalties(const Instance& inst);

struct AlphaEntry {
    int to;
    double alpha;
    std::int64_t dist; ///< raw integer distance d(i,to)
};

/// Sparse per-city alpha values covering each city's k_near nearest
/// neighbors under penalized cost.
class AlphaTable {
  public:
    AlphaTable(int n, int k_near) : k_near_(k_near), entries_(n) {}

    std::span<const AlphaEntry> neighbors(int city) const { return entries_[city]; }
    int k_near() const { return k_near_; }
    int n() const { return static_cast<int>(entries_.size()); }

    /// Look up alpha(i, j) in either endpoint's list; negative if absent.
    double lookup(int i, int j) const {
        for (const auto& e : entries_[i])
            if (e.to == j)
                return e.alpha;
        for (const auto& e : entries_[j])
            if (e.to == i)
                return e.alpha;
        return -1.0;
    }

    std::vector<AlphaEntry>& mutable_neighbors(int city) { return entries_[city]; }

  private:
    int k_near_;
    std::vector<std::vector<AlphaEntry>> entries_;
};

/// Alpha values for each city's k_near nearest neighbors by penalized
/// cost. `tree` must be the minimum 1-tree for `pi`. Uses the tree-path
/// maximum rule; edges of the 1-tree get alpha = 0.
AlphaTable alpha_values(const Instance& inst, const OneTreeResult& tree, std::span<const double> pi,
                        int k_near);

} // namespace mabb
