#include <doctest.h>

#include <cmath>
#include <numeric>

#include "mabbtsp/one_tree.hpp"
#include "mabbtsp/rng.hpp"
#include "support/test_util.hpp"

using namespace mabb;
using testutil::one_tree_length_enumerated;
using testutil::one_tree_length_kruskal;
using testutil::random_euc2d;
using testutil::square10;

namespace {

Instance triangle345() {
    return Instance::from_coords("tri", WeightKind::Euc2D, {{0, 0}, {3, 0}, {0, 4}});
}

} // namespace

TEST_SUITE("one_tree") {

    TEST_CASE("three cities give the unique triangle") {
        Instance inst = triangle345();
        std::vector<double> pi(3, 0.0);
        OneTreeResult tree = minimum_one_tree(inst, pi);
        CHECK(tree.edges.size() == 3);
        CHECK(tree.length == doctest::Approx(12.0));
        CHECK(tree.bound == doctest::Approx(12.0));
        CHECK(tree.is_tour());
        for (int d : tree.degrees)
            CHECK(d == 2);
    }

    TEST_CASE("square 1-tree length matches full enumeration") {
        Instance inst = square10();
        std::vector<double> pi(4, 0.0);
        OneTreeResult tree = minimum_one_tree(inst, pi);
        CHECK(tree.length == doctest::Approx(40.0));
        double brute = one_tree_length_enumerated(inst, pi, tree.special_node);
        CHECK(tree.length == doctest::Approx(brute));
    }

    TEST_CASE("bound identity under nonzero penalties") {
        Instance inst = square10();
        std::vector<double> pi{10.0, 0.0, 0.0, 0.0};
        OneTreeResult tree = minimum_one_tree(inst, pi);
        double pi_sum = std::accumulate(pi.begin(), pi.end(), 0.0);
        CHECK(tree.bound == doctest::Approx(tree.length - 2.0 * pi_sum));
        CHECK(tree.bound == doctest::Approx(40.0));
    }

    TEST_CASE("special node has degree two and the tree spans everything") {
        for (std::uint64_t seed : {11u, 12u, 13u}) {
            Instance inst = random_euc2d(20, seed);
            std::vector<double> pi(20, 0.5);
            OneTreeResult tree = minimum_one_tree(inst, pi);
            CHECK(static_cast<int>(tree.edges.size()) == 20);
            CHECK(tree.degrees[tree.special_node] == 2);
            int deg_sum = std::accumulate(tree.degrees.begin(), tree.degrees.end(), 0);
            CHECK(deg_sum == 2 * 20);
            for (int d : tree.degrees)
                CHECK(d >= 1);
        }
    }

    TEST_CASE("Prim matches Kruskal and full enumeration on small instances") {
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            int n = 5 + static_cast<int>(seed % 3);
            Instance inst = random_euc2d(n, seed * 131);
            std::vector<double> pi(n);
            std::uint64_t s = seed;
            for (auto& p : pi) {
                s = splitmix64(s);
                p = static_cast<double>(s % 17) - 8.0;
            }
            OneTreeResult tree = minimum_one_tree(inst, pi);
            double kruskal = one_tree_length_kruskal(inst, pi, tree.special_node);
            double brute = one_tree_length_enumerated(inst, pi, tree.special_node);
            CHECK(tree.length == doctest::Approx(kruskal).epsilon(1e-12));
            CHECK(tree.length == doctest::Approx(brute).epsilon(1e-12));
        }
    }

    TEST_CASE("ascent on a triangle terminates immediately") {
        Instance inst = triangle345();
        AscentResult res = ascend_penalties(inst);
        CHECK(res.bound == doctest::Approx(12.0));
        CHECK(res.iterations == 1);
        for (double p : res.pi)
            CHECK(p == 0.0);
    }

    TEST_CASE("ascent bound is sound and never below the starting bound") {
        for (std::uint64_t seed : {3u, 7u, 21u, 42u}) {
            Instance inst = random_euc2d(8, seed);
            std::vector<double> zero(8, 0.0);
            double start_bound = minimum_one_tree(inst, zero).bound;
            AscentResult res = ascend_penalties(inst);
            std::int64_t opt = testutil::brute_force_optimum(inst);
            CHECK(res.bound >= start_bound - 1e-9);
            CHECK(std::ceil(res.bound - 1e-9) <= static_cast<double>(opt));
        }
    }

    TEST_CASE("ascent result is self-consistent") {
        Instance inst = random_euc2d(30, 5);
        AscentResult res = ascend_penalties(inst);
        OneTreeResult recomputed = minimum_one_tree(inst, res.pi);
        CHECK(recomputed.bound == doctest::Approx(res.bound).epsilon(1e-12));
        CHECK(recomputed.length == doctest::Approx(res.tree.length).epsilon(1e-12));
    }

    TEST_CASE("alpha is zero on 1-tree edges and non-negative everywhere") {
        Instance inst = random_euc2d(12, 77);
        AscentResult res = ascend_penalties(inst);
        AlphaTable table = alpha_values(inst, res.tree, res.pi, 11);
        for (const auto& [a, b] : res.tree.edges) {
            double v = table.lookup(a, b);
            if (v >= 0.0) // edge present in some neighbor list
                CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
        }
        for (int i = 0; i < inst.n(); ++i)
            for (const auto& e : table.neighbors(i))
                CHECK(e.alpha >= -1e-9);
    }

    TEST_CASE("path-maximum alpha equals the forced-edge oracle on all pairs") {
        for (std::uint64_t seed : {101u, 202u, 303u}) {
            int n = 10;
            Instance inst = random_euc2d(n, seed);
            AscentResult res = ascend_penalties(inst);
            AlphaTable table = alpha_values(inst, res.tree, res.pi, n - 1);
            double base = one_tree_length_kruskal(inst, res.pi, res.tree.special_node);
            CHECK(base == doctest::Approx(res.tree.length).epsilon(1e-12));
            for (int i = 0; i < n; ++i) {
                for (const auto& e : table.neighbors(i)) {
                    double forced = one_tree_length_kruskal(inst, res.pi, res.tree.special_node,
                                                            std::make_pair(i, e.to));
                    CHECK(std::abs(e.alpha - (forced - base)) <= 1e-9);
                }
            }
        }
    }

    TEST_CASE("square diagonal alpha is the diagonal minus the longest path side") {
        Instance inst = square10();
        std::vector<double> pi(4, 0.0);
        OneTreeResult tree = minimum_one_tree(inst, pi);
        AlphaTable table = alpha_values(inst, tree, pi, 3);
        // Both diagonals cost 14, every side 10; forcing a diagonal in
        // displaces a 10-cost edge whichever role the diagonal plays.
        CHECK(table.lookup(0, 2) == doctest::Approx(4.0));
        CHECK(table.lookup(1, 3) == doctest::Approx(4.0));
    }

    TEST_CASE("large instances use the sparse neighbor graph") {
        // Above the sparse threshold the tree is built over 20-nearest
        // lists; the structural invariants must hold unchanged.
        Instance inst = random_euc2d(3100, 515, 100000);
        std::vector<double> pi(3100, 0.0);
        OneTreeResult tree = minimum_one_tree(inst, pi);
        CHECK(static_cast<int>(tree.edges.size()) == 3100);
        CHECK(tree.degrees[tree.special_node] == 2);
        int deg_sum = std::accumulate(tree.degrees.begin(), tree.degrees.end(), 0);
        CHECK(deg_sum == 2 * 3100);
        CHECK(tree.bound == doctest::Approx(tree.length));

        OneTreeResult again = minimum_one_tree(inst, pi);
        CHECK(again.length == tree.length);
        CHECK(again.special_node == tree.special_node);
    }

    TEST_CASE("a disconnected neighbor graph falls back to the full graph") {
        // Two clusters far apart: every 20-nearest list stays inside its
        // own cluster, so the sparse Prim cannot span and must fall back.
        std::vector<std::pair<double, double>> pts;
        std::uint64_t s = 99;
        for (int i = 0; i < 1550; ++i) {
            s = splitmix64(s);
            pts.emplace_back(static_cast<double>(s % 1000),
                             static_cast<double>(splitmix64(s) % 1000));
        }
        for (int i = 0; i < 1550; ++i) {
            s = splitmix64(s);
            pts.emplace_back(1e7 + static_cast<double>(s % 1000),
                             static_cast<double>(splitmix64(s) % 1000));
        }
        Instance inst = Instance::from_coords("twoclusters", WeightKind::Euc2D, std::move(pts));
        std::vector<double> pi(3100, 0.0);
        OneTreeResult tree = minimum_one_tree(inst, pi);
        CHECK(static_cast<int>(tree.edges.size()) == 3100);
        int deg_sum = std::accumulate(tree.degrees.begin(), tree.degrees.end(), 0);
        CHECK(deg_sum == 2 * 3100);
        // Exactly two long bridge edges can cross between the clusters
        // in a spanning structure over both.
        int bridges = 0;
        for (const auto& [a, b] : tree.edges)
            if ((a < 1550) != (b < 1550))
                ++bridges;
        CHECK(bridges >= 1);
        CHECK(bridges <= 2);
    }

    TEST_CASE("alpha is symmetric where both directions are present") {
        Instance inst = random_euc2d(15, 909);
        AscentResult res = ascend_penalties(inst);
        AlphaTable table = alpha_values(inst, res.tree, res.pi, 14);
        for (int i = 0; i < inst.n(); ++i)
            for (const auto& e : table.neighbors(i))
                for (const auto& back : table.neighbors(e.to))
                    if (back.to == i)
                        CHECK(e.alpha == doctest::Approx(back.alpha).epsilon(1e-12));
    }
}
