#include "mabbtsp/one_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace mabb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Above this size the tree is built over a sparse nearest-neighbor graph
// (full-graph fallback if it disconnects); below it, over the full graph.
constexpr int kSparseThreshold = 3000;
constexpr int kSparseNeighbors = 20;

double penalized(const Instance& inst, std::span<const double> pi, int i, int j) {
    return static_cast<double>(inst.cost(i, j)) + pi[i] + pi[j];
}

/// Shared machinery for repeated 1-tree construction during the ascent.
/// The sparse adjacency, when used, is fixed from the unpenalized costs;
/// penalties change edge costs but never connectivity.
class OneTreeBuilder {
  public:
    explicit OneTreeBuilder(const Instance& inst) : inst_(inst) {
        if (inst.n() > kSparseThreshold)
            build_neighbor_graph();
    }

    OneTreeResult build(std::span<const double> pi) const {
        if (!nbrs_.empty()) {
            OneTreeResult r;
            if (build_sparse(pi, r))
                return r;
        }
        return build_full(pi);
    }

  private:
    void build_neighbor_graph() {
        int n = inst_.n();
        nbrs_.assign(n, {});
        std::vector<std::pair<std::int64_t, int>> ranked;
        ranked.reserve(n - 1);
        for (int i = 0; i < n; ++i) {
            ranked.clear();
            for (int j = 0; j < n; ++j)
                if (j != i)
                    ranked.emplace_back(inst_.cost(i, j), j);
            int k = std::min<int>(kSparseNeighbors, n - 1);
            std::partial_sort(ranked.begin(), ranked.begin() + k, ranked.end());
            for (int t = 0; t < k; ++t)
                nbrs_[i].push_back(ranked[t].second);
        }
        // Symmetrize so Prim can move in both directions.
        std::vector<std::vector<int>> sym(n);
        for (int i = 0; i < n; ++i)
            for (int j : nbrs_[i]) {
                sym[i].push_back(j);
                sym[j].push_back(i);
            }
        for (int i = 0; i < n; ++i) {
            std::sort(sym[i].begin(), sym[i].end());
            sym[i].erase(std::unique(sym[i].begin(), sym[i].end()), sym[i].end());
        }
        nbrs_ = std::move(sym);
    }

    // Special node: maximal second-cheapest incident penalized edge,
    // ties broken by lowest index.
    int pick_special_full(std::span<const double> pi, double& cheapest, double& second,
                          int& cheapest_to, int& second_to) const {
        int n = inst_.n();
        int special = -1;
        double best_second = -kInf;
        for (int i = 0; i < n; ++i) {
            double c1 = kInf, c2 = kInf;
            int t1 = -1, t2 = -1;
            for (int j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                double c = penalized(inst_, pi, i, j);
                if (c < c1) {
                    c2 = c1;
                    t2 = t1;
                    c1 = c;
                    t1 = j;
                } else if (c < c2) {
                    c2 = c;
                    t2 = j;
                }
            }
            if (c2 > best_second) {
                best_second = c2;
                special = i;
                cheapest = c1;
                second = c2;
                cheapest_to = t1;
                second_to = t2;
            }
        }
        return special;
    }

    int pick_special_sparse(std::span<const double> pi, double& cheapest, double& second,
                            int& cheapest_to, int& second_to) const {
        int n = inst_.n();
        int special = -1;
        double best_second = -kInf;
        for (int i = 0; i < n; ++i) {
            double c1 = kInf, c2 = kInf;
            int t1 = -1, t2 = -1;
            for (int j : nbrs_[i]) {
                double c = penalized(inst_, pi, i, j);
                if (c < c1) {
                    c2 = c1;
                    t2 = t1;
                    c1 = c;
                    t1 = j;
                } else if (c < c2) {
                    c2 = c;
                    t2 = j;
                }
            }
            if (t2 >= 0 && c2 > best_second) {
                best_second = c2;
                special = i;
                cheapest = c1;
                second = c2;
                cheapest_to = t1;
                second_to = t2;
            }
        }
        return special;
    }

    OneTreeResult assemble(std::span<const double> pi, int special, double c1, double c2, int t1,
                           int t2, std::vector<int> parent, std::vector<double> parent_cost,
                           double tree_len) const {
        int n = inst_.n();
        OneTreeResult r;
        r.special_node = special;
        r.parent = std::move(parent);
        r.parent_cost = std::move(parent_cost);
        r.degrees.assign(n, 0);
        r.edges.reserve(n);
        for (int v = 0; v < n; ++v) {
            if (v == special || r.parent[v] < 0)
                continue;
            r.edges.emplace_back(r.parent[v], v);
            ++r.degrees[r.parent[v]];
            ++r.degrees[v];
        }
        r.edges.emplace_back(special, t1);
        r.edges.emplace_back(special, t2);
        r.degrees[special] += 2;
        ++r.degrees[t1];
        ++r.degrees[t2];
        r.special_second_cost = c2;
        r.length = tree_len + c1 + c2;
        double pi_sum = std::accumulate(pi.begin(), pi.end(), 0.0);
        r.bound = r.length - 2.0 * pi_sum;
        return r;
    }

    OneTreeResult build_full(std::span<const double> pi) const {
        int n = inst_.n();
        if (n < 3)
            throw UsageError("minimum_one_tree: need at least 3 cities");
        double c1 = 0, c2 = 0;
        int t1 = -1, t2 = -1;
        int special = pick_special_full(pi, c1, c2, t1, t2);

        // Prim over V \ {special}, rooted at the lowest remaining index.
        int root = special == 0 ? 1 : 0;
        std::vector<int> parent(n, -1);
        std::vector<double> parent_cost(n, 0.0);
        std::vector<double> dist(n, kInf);
        std::vector<int> link(n, root);
        std::vector<char> in_tree(n, 0);
        in_tree[special] = 1;
        in_tree[root] = 1;
        for (int j = 0; j < n; ++j)
            if (!in_tree[j])
                dist[j] = penalized(inst_, pi, root, j);

        double tree_len = 0.0;
        for (int added = 0; added < n - 2; ++added) {
            int u = -1;
            double best = kInf;
            for (int j = 0; j < n; ++j)
                if (!in_tree[j] && dist[j] < best) {
                    best = dist[j];
                    u = j;
                }
            if (u < 0)
                throw UsageError("minimum_one_tree: non-finite penalized costs");
            in_tree[u] = 1;
            parent[u] = link[u];
            parent_cost[u] = best;
            tree_len += best;
            for (int j = 0; j < n; ++j) {
                if (in_tree[j])
                    continue;
                double c = penalized(inst_, pi, u, j);
                if (c < dist[j]) {
                    dist[j] = c;
                    link[j] = u;
                }
            }
        }
        return assemble(pi, special, c1, c2, t1, t2, std::move(parent), std::move(parent_cost),
                        tree_len);
    }

    // Lazy-deletion heap Prim on the neighbor graph. Returns false when the
    // graph turned out disconnected so the caller can fall back.
    bool build_sparse(std::span<const double> pi, OneTreeResult& out) const {
        int n = inst_.n();
        double c1 = 0, c2 = 0;
        int t1 = -1, t2 = -1;
        int special = pick_special_sparse(pi, c1, c2, t1, t2);
        if (special < 0)
            return false;

        int root = special == 0 ? 1 : 0;
        std::vector<int> parent(n, -1);
        std::vector<double> parent_cost(n, 0.0);
        std::vector<double> dist(n, kInf);
        std::vector<int> link(n, -1);
        std::vector<char> in_tree(n, 0);
        in_tree[special] = 1;
        in_tree[root] = 1;

        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        auto relax = [&](int u) {
            for (int j : nbrs_[u]) {
                if (in_tree[j])
                    continue;
                double c = penalized(inst_, pi, u, j);
                if (c < dist[j]) {
                    dist[j] = c;
                    link[j] = u;
                    heap.emplace(c, j);
                }
            }
        };
        relax(root);

        double tree_len = 0.0;
        int added = 0;
        while (added < n - 2 && !heap.empty()) {
            auto [c, u] = heap.top();
            heap.pop();
            if (in_tree[u] || c > dist[u])
                continue;
            in_tree[u] = 1;
            parent[u] = link[u];
            parent_cost[u] = c;
            tree_len += c;
            ++added;
            relax(u);
        }
        if (added < n - 2)
            return false;
        out = assemble(pi, special, c1, c2, t1, t2, std::move(parent), std::move(parent_cost),
                       tree_len);
        return true;
    }

    const Instance& inst_;
    std::vector<std::vector<int>> nbrs_;
};

} // namespace

OneTreeResult minimum_one_tree(const Instance& inst, std::span<const double> pi) {
    if (static_cast<int>(pi.size()) != inst.n())
        throw UsageError("minimum_one_tree: pi size does not match instance");
    return OneTreeBuilder(inst).build(pi);
}

AscentResult ascend_penalties(const Instance& inst) {
    int n = inst.n();
    OneTreeBuilder builder(inst);

    AscentResult best;
    best.pi.assign(n, 0.0);

    std::vector<double> pi(n, 0.0);
    std::vector<double> v_prev(n, 0.0);

    OneTreeResult tree = builder.build(pi);
    best.bound = tree.bound;
    best.tree = tree;
    best.iterations = 1;
    if (tree.is_tour())
        return best;

    int period = std::max(n / 2, 10);
    double sigma = 1.0;
    // The step starts at 1 regardless of the cost scale, so the first
    // period doubles it on every improvement until progress stalls;
    // without this the penalties cannot reach the magnitudes that
    // large-coordinate instances need within the iteration budget.
    bool initial_phase = true;
    while (period >= 1 && sigma >= 1e-4) {
        bool improved_at_last = false;
        for (int step = 1; step <= period; ++step) {
            for (int i = 0; i < n; ++i) {
                double v = static_cast<double>(tree.degrees[i] - 2);
                pi[i] += sigma * (0.7 * v + 0.3 * v_prev[i]);
                v_prev[i] = v;
            }
            tree = builder.build(pi);
            ++best.iterations;
            if (tree.bound > best.bound) {
                best.bound = tree.bound;
                best.pi = pi;
                best.tree = tree;
                if (initial_phase)
                    sigma *= 2.0;
                if (step == period)
                    improved_at_last = true;
            } else if (initial_phase && step > period / 2) {
                initial_phase = false;
            }
            if (tree.is_tour()) {
                if (tree.bound >= best.bound) {
                    best.bound = tree.bound;
                    best.pi = pi;
                    best.tree = tree;
                }
                return best;
            }
        }
        initial_phase = false;
        if (improved_at_last)
            sigma *= 2.0;
        period /= 2;
        sigma /= 2.0;
    }
    return best;
}

AlphaTable alpha_values(const Instance& inst, const OneTreeResult& tree, std::span<const double> pi,
                        int k_near) {
    int n = inst.n();
    int s = tree.special_node;
    int k = std::min(k_near, n - 1);
    AlphaTable table(n, k);

    // The two 1-tree edges at the special node (alpha = 0 for both).
    int s_edge[2] = {-1, -1};
    {
        int found = 0;
        for (const auto& [a, b] : tree.edges)
            if (a == s || b == s) {
                if (found < 2)
                    s_edge[found] = a == s ? b : a;
                ++found;
            }
    }
    auto is_special_edge = [&](int j) { return j == s_edge[0] || j == s_edge[1]; };

    // Undirected adjacency of the spanning part, with penalized edge costs.
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (int v = 0; v < n; ++v) {
        int p = tree.parent[v];
        if (v == s || p < 0)
            continue;
        adj[v].emplace_back(p, tree.parent_cost[v]);
        adj[p].emplace_back(v, tree.parent_cost[v]);
    }

    // k nearest neighbors of each city by penalized cost (ties by index).
    std::vector<std::pair<double, int>> ranked;
    ranked.reserve(n - 1);
    std::vector<double> beta(n, 0.0);
    std::vector<char> seen(n, 0);
    std::vector<int> stack;
    stack.reserve(n);

    for (int i = 0; i < n; ++i) {
        ranked.clear();
        for (int j = 0; j < n; ++j)
            if (j != i)
                ranked.emplace_back(penalized(inst, pi, i, j), j);
        std::partial_sort(ranked.begin(), ranked.begin() + k, ranked.end());

        bool beta_ready = false;
        auto ensure_beta = [&]() {
            // Max edge cost on the spanning-tree path from i to every node.
            // The source starts at -inf: penalized costs may be negative.
            if (beta_ready || i == s)
                return;
            beta[i] = -kInf;
            std::fill(seen.begin(), seen.end(), 0);
            stack.clear();
            stack.push_back(i);
            seen[i] = 1;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (const auto& [w, c] : adj[u]) {
                    if (seen[w])
                        continue;
                    seen[w] = 1;
                    beta[w] = std::max(beta[u], c);
                    stack.push_back(w);
                }
            }
            beta_ready = true;
        };

        auto& entries = table.mutable_neighbors(i);
        entries.reserve(k);
        for (int t = 0; t < k; ++t) {
            int j = ranked[t].second;
            double c = ranked[t].first;
            double a;
            if (i == s)
                a = is_special_edge(j) ? 0.0 : c - tree.special_second_cost;
            else if (j == s)
                a = is_special_edge(i) ? 0.0 : c - tree.special_second_cost;
            else {
                ensure_beta();
                a = c - beta[j];
            }
            entries.push_back({j, a, inst.cost(i, j)});
        }
    }
    return table;
}

} // namespace mabb
