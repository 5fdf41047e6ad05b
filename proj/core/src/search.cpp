#include "mabbtsp/search.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <limits>

namespace mabb {

namespace {

// Hard cap on move depth; keeps per-step state on the stack.
constexpr int kMaxDepth = 16;

/// The k removed edges cut the tour into k segments. The layout records
/// each segment's endpoint cities and positions, in tour order.
struct SegmentLayout {
    int k = 0;
    std::array<int, kMaxDepth> cut_pos{};  // position of a, edge = (a, succ(a))
    std::array<int, kMaxDepth> head{};     // first city after the cut
    std::array<int, kMaxDepth> tail{};     // last city before the next cut
    std::array<int, kMaxDepth> head_pos{};
    std::array<int, kMaxDepth> tail_pos{};
};

void build_layout(const Tour& tour, std::span<const int> t, SegmentLayout& lay) {
    int n = tour.n();
    int k = static_cast<int>(t.size()) / 2;
    lay.k = k;
    for (int j = 0; j < k; ++j) {
        int u = t[2 * j], v = t[2 * j + 1];
        int a = tour.succ(u) == v ? u : v;
        lay.cut_pos[j] = tour.position(a);
    }
    std::sort(lay.cut_pos.begin(), lay.cut_pos.begin() + k);
    const auto& order = tour.order();
    for (int i = 0; i < k; ++i) {
        int next_cut = lay.cut_pos[(i + 1) % k];
        lay.head_pos[i] = (lay.cut_pos[i] + 1) % n;
        lay.tail_pos[i] = next_cut;
        lay.head[i] = order[lay.head_pos[i]];
        lay.tail[i] = order[lay.tail_pos[i]];
    }
}

/// Partner of a move city across an added edge (or the closing edge).
int link_partner(std::span<const int> t, int city) {
    int m = static_cast<int>(t.size());
    if (city == t[0])
        return t[m - 1];
    if (city == t[m - 1])
        return t[0];
    for (int j = 1; j + 1 < m; j += 2) {
        if (t[j] == city)
            return t[j + 1];
        if (t[j + 1] == city)
            return t[j];
    }
    return -1;
}

/// True when removing the move's tour edges and adding its new edges
/// yields one Hamiltonian cycle. Walks segment endpoints through the
/// added-edge links; feasible iff the walk closes after covering every
/// segment.
bool closable(const Tour& tour, std::span<const int> t) {
    int k = static_cast<int>(t.size()) / 2;
    if (k == 1)
        return true;
    SegmentLayout lay;
    build_layout(tour, t, lay);

    int cur = t[0];
    unsigned visited = 0;
    for (int step = 0; step < k; ++step) {
        int seg = -1;
        bool at_head = false;
        for (int i = 0; i < k; ++i) {
            if (lay.head[i] == cur) {
                seg = i;
                at_head = true;
                break;
            }
            if (lay.tail[i] == cur) {
                seg = i;
                at_head = false;
                break;
            }
        }
        if (seg < 0 || (visited & (1u << seg)))
            return false;
        visited |= 1u << seg;
        int other = at_head ? lay.tail[seg] : lay.head[seg];
        cur = link_partner(t, other);
    }
    return cur == t[0] && visited == (1u << k) - 1;
}

struct StepScratch {
    std::array<int, 2 * kMaxDepth> t{};
    std::vector<char> in_move;
};

std::optional<Move> make_move(std::span<const int> t, std::int64_t gain) {
    Move m;
    m.cities.assign(t.begin(), t.end());
    m.gain = gain;
    return m;
}

/// Depth-first extension of a partial move. t holds 2k-1 cities; g_pre is
/// the cumulative gain over the k-1 removed and k-1 added edges so far.
std::optional<Move> descend(const Tour& tour, const CandidateSets& sets, StepScratch& s, int k,
                            int k_max, std::int64_t g_pre) {
    const Instance& inst = tour.instance();
    int last = s.t[2 * k - 2];
    for (int dir = 0; dir < 2; ++dir) {
        int next = dir == 0 ? tour.succ(last) : tour.pred(last);
        if (s.in_move[next])
            continue;
        std::int64_t g_remove = g_pre + inst.cost(last, next);
        s.t[2 * k - 1] = next;
        s.in_move[next] = 1;
        std::span<const int> prefix(s.t.data(), 2 * k);
        if (closable(tour, prefix)) {
            if (k >= 2) {
                std::int64_t gain = g_remove - inst.cost(next, s.t[0]);
                if (gain > 0) {
                    s.in_move[next] = 0;
                    return make_move(prefix, gain);
                }
            }
            if (k < k_max) {
                for (const auto& cand : sets.of(next)) {
                    int y = cand.to;
                    if (s.in_move[y])
                        continue;
                    // Added edges must be new: not on the tour, which also
                    // rules out re-adding a removed edge.
                    if (tour.adjacent(next, y))
                        continue;
                    std::int64_t g_add = g_remove - cand.dist;
                    if (g_add <= 0)
                        continue;
                    s.t[2 * k] = y;
                    s.in_move[y] = 1;
                    auto found = descend(tour, sets, s, k + 1, k_max, g_add);
                    s.in_move[y] = 0;
                    if (found) {
                        s.in_move[next] = 0;
                        return found;
                    }
                }
            }
        }
        s.in_move[next] = 0;
    }
    return std::nullopt;
}

std::optional<Move> step_with_scratch(const Tour& tour, int start, const CandidateSets& sets,
                                      int k_max, StepScratch& s) {
    s.t[0] = start;
    s.in_move[start] = 1;
    auto found = descend(tour, sets, s, 1, k_max, 0);
    s.in_move[start] = 0;
    return found;
}

} // namespace

Tour::Tour(const Instance& inst, std::vector<int> order) : inst_(&inst), order_(std::move(order)) {
    int n = inst.n();
    if (static_cast<int>(order_.size()) != n)
        throw UsageError("Tour: order size does not match instance");
    pos_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        int c = order_[i];
        if (c < 0 || c >= n || pos_[c] != -1)
            throw UsageError("Tour: order is not a permutation of 0..n-1");
        pos_[c] = i;
    }
    length_ = tour_length(inst, order_);
}

void Tour::replace(std::vector<int> new_order, std::int64_t gain) {
    order_ = std::move(new_order);
    for (int i = 0; i < n(); ++i)
        pos_[order_[i]] = i;
    length_ -= gain;
}

Tour choose_initial_tour(const Instance& inst, const Tour* best, const CandidateSets& sets,
                         std::mt19937_64& rng) {
    int n = inst.n();
    std::vector<char> visited(n, 0);
    std::vector<int> order;
    order.reserve(n);
    std::vector<int> pool;
    pool.reserve(sets.candidate_size());

    int cur = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    order.push_back(cur);
    visited[cur] = 1;

    for (int step = 1; step < n; ++step) {
        // A random pick inside each preference tier keeps the trials
        // diverse; a deterministic pick would just replay the best tour.
        pool.clear();
        if (best != nullptr) {
            for (const auto& e : sets.of(cur))
                if (!visited[e.to] && e.alpha == 0.0 && best->adjacent(cur, e.to))
                    pool.push_back(e.to);
        }
        if (pool.empty()) {
            for (const auto& e : sets.of(cur))
                if (!visited[e.to])
                    pool.push_back(e.to);
        }
        int next;
        if (!pool.empty()) {
            next = pool[rng() % pool.size()];
        } else {
            next = -1;
            std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
            for (int j = 0; j < n; ++j) {
                if (visited[j])
                    continue;
                std::int64_t c = inst.cost(cur, j);
                if (c < best_cost) {
                    best_cost = c;
                    next = j;
                }
            }
        }
        order.push_back(next);
        visited[next] = 1;
        cur = next;
    }
    return Tour(inst, std::move(order));
}

std::optional<Move> sequential_step(const Tour& tour, int start, const CandidateSets& sets,
                                    int k_max) {
    if (k_max < 2 || k_max > kMaxDepth)
        throw UsageError("sequential_step: k_max must be in [2, " + std::to_string(kMaxDepth) +
                         "]");
    StepScratch scratch;
    scratch.in_move.assign(tour.n(), 0);
    return step_with_scratch(tour, start, sets, k_max, scratch);
}

void apply_move(Tour& tour, const Move& move) {
    int n = tour.n();
    int k = move.depth();
    std::span<const int> t(move.cities);
    SegmentLayout lay;
    build_layout(tour, t, lay);
    const auto& order = tour.order();

    std::vector<int> new_order;
    new_order.reserve(n);
    int cur = t[0];
    unsigned visited = 0;
    for (int step = 0; step < k; ++step) {
        int seg = -1;
        bool at_head = false;
        for (int i = 0; i < k; ++i) {
            if (lay.head[i] == cur) {
                seg = i;
                at_head = true;
                break;
            }
            if (lay.tail[i] == cur) {
                seg = i;
                at_head = false;
                break;
            }
        }
        if (seg < 0 || (visited & (1u << seg)))
            throw UsageError("apply_move: move is not closable on this tour");
        visited |= 1u << seg;
        if (at_head) {
            for (int p = lay.head_pos[seg];; p = (p + 1) % n) {
                new_order.push_back(order[p]);
                if (p == lay.tail_pos[seg])
                    break;
            }
            cur = link_partner(t, lay.tail[seg]);
        } else {
            for (int p = lay.tail_pos[seg];; p = (p + n - 1) % n) {
                new_order.push_back(order[p]);
                if (p == lay.head_pos[seg])
                    break;
            }
            cur = link_partner(t, lay.head[seg]);
        }
    }
    if (static_cast<int>(new_order.size()) != n || cur != t[0])
        throw UsageError("apply_move: move is not closable on this tour");
    tour.replace(std::move(new_order), move.gain);
}

void lin_kernighan(Tour& tour, const CandidateSets& sets, int k_max) {
    if (k_max < 2 || k_max > kMaxDepth)
        throw UsageError("lin_kernighan: k_max must be in [2, " + std::to_string(kMaxDepth) + "]");
    int n = tour.n();
    StepScratch scratch;
    scratch.in_move.assign(n, 0);

    std::deque<int> queue(tour.order().begin(), tour.order().end());
    std::vector<char> queued(n, 1);

    auto drain = [&]() {
        while (!queue.empty()) {
            int city = queue.front();
            queue.pop_front();
            queued[city] = 0;
            while (auto move = step_with_scratch(tour, city, sets, k_max, scratch)) {
                apply_move(tour, *move);
                for (int c : move->cities) {
                    if (!queued[c]) {
                        queued[c] = 1;
                        queue.push_back(c);
                    }
                }
            }
        }
    };

    // The don't-look queue does the bulk of the work; a final full sweep
    // certifies the fixed point, since a move elsewhere can revive a city
    // that was deactivated without touching its own edges.
    while (true) {
        drain();
        bool found = false;
        for (int city = 0; city < n && !found; ++city) {
            if (auto move = step_with_scratch(tour, city, sets, k_max, scratch)) {
                apply_move(tour, *move);
                for (int c : move->cities) {
                    if (!queued[c]) {
                        queued[c] = 1;
                        queue.push_back(c);
                    }
                }
                found = true;
            }
        }
        if (!found)
            return;
    }
}

} // namespace mabb
