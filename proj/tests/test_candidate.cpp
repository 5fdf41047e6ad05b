#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>

#include "mabbtsp/candidate.hpp"
#include "mabbtsp/rng.hpp"
#include "support/test_util.hpp"

using namespace mabb;

namespace {

// Candidate sets straight from the preprocessing pipeline.
CandidateSets pipeline_sets(const Instance& inst, int candidate_size) {
    AscentResult res = ascend_penalties(inst);
    int k_near = std::min(inst.n() - 1, std::max(10, 2 * candidate_size));
    AlphaTable table = alpha_values(inst, res.tree, res.pi, k_near);
    return build_candidate_sets(table, inst, candidate_size);
}

std::multiset<std::pair<int, int>> membership(const CandidateSets& sets) {
    std::multiset<std::pair<int, int>> edges;
    for (int c = 0; c < sets.n(); ++c)
        for (const auto& e : sets.of(c))
            edges.emplace(c, e.to);
    return edges;
}

} // namespace

TEST_SUITE("candidate") {

    TEST_CASE("size one keeps each city's cheapest-alpha neighbor") {
        Instance inst = Instance::from_coords("tri", WeightKind::Euc2D, {{0, 0}, {3, 0}, {0, 4}});
        CandidateSets sets = pipeline_sets(inst, 1);
        for (int c = 0; c < 3; ++c) {
            CHECK(sets.of(c).size() == 1);
            CHECK(sets.of(c)[0].to != c);
        }
    }

    TEST_CASE("alpha ties break by distance then index") {
        AlphaTable table(4, 3);
        // City 0: all alphas equal; distances order 2 < 1 < 3, with a
        // distance tie between 1 and 3 resolved by index.
        table.mutable_neighbors(0) = {{1, 0.5, 9}, {2, 0.5, 4}, {3, 0.5, 9}};
        table.mutable_neighbors(1) = {{0, 0.5, 9}, {2, 0.5, 5}, {3, 0.5, 6}};
        table.mutable_neighbors(2) = {{0, 0.5, 4}, {1, 0.5, 5}, {3, 0.5, 7}};
        table.mutable_neighbors(3) = {{0, 0.5, 9}, {1, 0.5, 6}, {2, 0.5, 7}};
        Instance inst = Instance::from_matrix("m", {{0, 9, 4, 9}, {9, 0, 5, 6}, {4, 5, 0, 7},
                                                    {9, 6, 7, 0}});
        CandidateSets sets = build_candidate_sets(table, inst, 3);
        CHECK(sets.of(0)[0].to == 2);
        CHECK(sets.of(0)[1].to == 1);
        CHECK(sets.of(0)[2].to == 3);
    }

    TEST_CASE("too small an alpha table is an internal error") {
        AlphaTable table(3, 1);
        table.mutable_neighbors(0) = {{1, 0.0, 1}};
        table.mutable_neighbors(1) = {{0, 0.0, 1}};
        table.mutable_neighbors(2) = {{0, 0.0, 1}};
        Instance inst = Instance::from_matrix("m", {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
        CHECK_THROWS_WITH_AS(build_candidate_sets(table, inst, 2), doctest::Contains("k_near"),
                             std::logic_error);
    }

    TEST_CASE("resort by the previous score changes nothing") {
        Instance inst = testutil::random_euc2d(30, 17);
        CandidateSets sets = pipeline_sets(inst, 5);
        CandidateSets before = sets;
        resort_candidates(sets, [](int, const CandidateEntry& e) { return e.score; });
        for (int c = 0; c < sets.n(); ++c)
            for (int k = 0; k < sets.candidate_size(); ++k)
                CHECK(sets.of(c)[k].to == before.of(c)[k].to);
    }

    TEST_CASE("negating distinct scores reverses each list") {
        Instance inst = testutil::random_euc2d(25, 23);
        CandidateSets sets = pipeline_sets(inst, 4);
        // Make scores distinct and order-defining first.
        resort_candidates(sets, [](int, const CandidateEntry& e) {
            return static_cast<double>(e.dist) + 1e-3 * e.to;
        });
        CandidateSets forward = sets;
        resort_candidates(sets, [](int, const CandidateEntry& e) {
            return -(static_cast<double>(e.dist) + 1e-3 * e.to);
        });
        for (int c = 0; c < sets.n(); ++c)
            for (int k = 0; k < sets.candidate_size(); ++k)
                CHECK(sets.of(c)[k].to == forward.of(c)[sets.candidate_size() - 1 - k].to);
    }

    TEST_CASE("membership is stable under arbitrary resorts") {
        Instance inst = testutil::random_euc2d(40, 31);
        CandidateSets sets = pipeline_sets(inst, 5);
        auto before = membership(sets);
        std::uint64_t s = 5;
        resort_candidates(sets, [&](int, const CandidateEntry&) {
            s = splitmix64(s);
            return static_cast<double>(s % 1000);
        });
        CHECK(membership(sets) == before);
    }

    TEST_CASE("candidate lists cover almost every optimal-tour edge" *
              doctest::description("needs data/tsplib; see scripts/fetch_tsplib.sh")) {
        const char* data_env = std::getenv("MABBTSP_DATA");
        std::filesystem::path dir = data_env ? data_env : "data/tsplib";
        auto tsp = dir / "pr1002.tsp";
        auto opt_tour = dir / "pr1002.opt.tour";
        if (!std::filesystem::exists(tsp) || !std::filesystem::exists(opt_tour)) {
            MESSAGE("skipped: ", tsp.string(), " or its .opt.tour not present");
            return;
        }
        Instance inst = Instance::from_file(tsp);
        auto tour = load_tour_file(opt_tour, inst.n());
        CandidateSets sets = pipeline_sets(inst, 5);
        int covered = 0;
        for (int i = 0; i < inst.n(); ++i) {
            int a = tour[i], b = tour[(i + 1) % inst.n()];
            if (sets.contains(a, b) || sets.contains(b, a))
                ++covered;
        }
        double share = static_cast<double>(covered) / inst.n();
        MESSAGE("optimal-edge coverage: ", share);
        CHECK(share >= 0.95);
    }

    TEST_CASE("initial order is ascending alpha") {
        Instance inst = testutil::random_euc2d(35, 41);
        CandidateSets sets = pipeline_sets(inst, 5);
        for (int c = 0; c < sets.n(); ++c) {
            auto list = sets.of(c);
            for (std::size_t k = 0; k + 1 < list.size(); ++k)
                CHECK(list[k].alpha <= list[k + 1].alpha);
            std::set<int> neighbors;
            for (const auto& e : list) {
                CHECK(e.to != c);
                neighbors.insert(e.to);
            }
            CHECK(static_cast<int>(neighbors.size()) == sets.candidate_size());
        }
    }
}
