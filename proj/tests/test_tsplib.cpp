#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "mabbtsp/rng.hpp"
#include "mabbtsp/tsplib.hpp"
#include "support/test_util.hpp"

using namespace mabb;

namespace {

const char* kTriangle345 =
    "NAME : tri\n"
    "TYPE : TSP\n"
    "DIMENSION : 3\n"
    "EDGE_WEIGHT_TYPE : EUC_2D\n"
    "NODE_COORD_SECTION\n"
    "1 0 0\n"
    "2 3 0\n"
    "3 0 4\n"
    "EOF\n";

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << contents;
    return path;
}

} // namespace

TEST_SUITE("tsplib") {

    TEST_CASE("parses a minimal EUC_2D instance") {
        Instance inst = Instance::parse(kTriangle345);
        CHECK(inst.n() == 3);
        CHECK(inst.weight_kind() == WeightKind::Euc2D);
        CHECK(inst.name() == "tri");
        CHECK(inst.cost(0, 1) == 3);
        CHECK(inst.cost(0, 2) == 4);
        CHECK(inst.cost(1, 2) == 5);
    }

    TEST_CASE("dimension mismatch is a parse error") {
        const char* text =
            "TYPE : TSP\n"
            "DIMENSION : 4\n"
            "EDGE_WEIGHT_TYPE : EUC_2D\n"
            "NODE_COORD_SECTION\n"
            "1 0 0\n"
            "2 3 0\n"
            "3 0 4\n"
            "EOF\n";
        CHECK_THROWS_WITH_AS(Instance::parse(text), doctest::Contains("coordinate lines"),
                             ParseError);
    }

    TEST_CASE("unsupported weight type names the keyword") {
        const char* text =
            "TYPE : TSP\n"
            "DIMENSION : 3\n"
            "EDGE_WEIGHT_TYPE : MAX_2D\n"
            "NODE_COORD_SECTION\n"
            "1 0 0\n"
            "2 3 0\n"
            "3 0 4\n";
        CHECK_THROWS_WITH_AS(Instance::parse(text), doctest::Contains("MAX_2D"), ParseError);
    }

    TEST_CASE("cost formulas match the reference examples") {
        Instance euc = Instance::from_coords("euc", WeightKind::Euc2D, {{0, 0}, {3, 4}, {9, 9}});
        CHECK(euc.cost(0, 1) == 5);

        Instance ceil2d =
            Instance::from_coords("ceil", WeightKind::Ceil2D, {{0, 0}, {1, 1}, {9, 9}});
        CHECK(ceil2d.cost(0, 1) == 2);

        // sqrt(100/10) = 3.162..., nint gives 3 which falls short, so 4.
        Instance att = Instance::from_coords("att", WeightKind::Att, {{0, 0}, {10, 0}, {5, 5}});
        CHECK(att.cost(0, 1) == 4);

        // One degree of longitude on the equator.
        Instance geo =
            Instance::from_coords("geo", WeightKind::Geo, {{0.0, 0.0}, {0.0, 1.0}, {10.0, 10.0}});
        CHECK(geo.cost(0, 1) == 112);

        // Degree.minute encoding: 10.55 means 10 degrees 55 minutes, and
        // the degree part truncates. Mirrored for negative coordinates.
        Instance ddmm = Instance::from_coords(
            "ddmm", WeightKind::Geo,
            {{10.30, 5.0}, {10.55, 5.0}, {-10.55, -3.0}, {-10.30, -3.0}});
        CHECK(ddmm.cost(0, 1) == 47);
        CHECK(ddmm.cost(2, 3) == 47);
    }

    TEST_CASE("explicit matrix lookup") {
        Instance inst = Instance::from_matrix(
            "mat", {{0, 3, 7}, {3, 0, 4}, {7, 4, 0}});
        CHECK(inst.cost(1, 2) == 4);
        CHECK(inst.cost(0, 2) == 7);
        CHECK(inst.cost(2, 0) == 7);
    }

    TEST_CASE("explicit triangular layouts symmetrize") {
        const char* upper_row =
            "TYPE : TSP\n"
            "DIMENSION : 4\n"
            "EDGE_WEIGHT_TYPE : EXPLICIT\n"
            "EDGE_WEIGHT_FORMAT : UPPER_ROW\n"
            "EDGE_WEIGHT_SECTION\n"
            "1 2 3\n"
            "4 5\n"
            "6\n"
            "EOF\n";
        Instance a = Instance::parse(upper_row);
        CHECK(a.cost(0, 1) == 1);
        CHECK(a.cost(0, 3) == 3);
        CHECK(a.cost(2, 3) == 6);
        CHECK(a.cost(3, 2) == 6);

        const char* lower_diag =
            "TYPE : TSP\n"
            "DIMENSION : 3\n"
            "EDGE_WEIGHT_TYPE : EXPLICIT\n"
            "EDGE_WEIGHT_FORMAT : LOWER_DIAG_ROW\n"
            "EDGE_WEIGHT_SECTION\n"
            "0\n"
            "5 0\n"
            "8 9 0\n"
            "EOF\n";
        Instance b = Instance::parse(lower_diag);
        CHECK(b.cost(0, 1) == 5);
        CHECK(b.cost(0, 2) == 8);
        CHECK(b.cost(1, 2) == 9);
    }

    TEST_CASE("asymmetric full matrix is rejected") {
        const char* text =
            "TYPE : TSP\n"
            "DIMENSION : 3\n"
            "EDGE_WEIGHT_TYPE : EXPLICIT\n"
            "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n"
            "EDGE_WEIGHT_SECTION\n"
            "0 1 2\n"
            "1 0 3\n"
            "9 3 0\n"
            "EOF\n";
        CHECK_THROWS_AS(Instance::parse(text), ParseError);
    }

    TEST_CASE("unsupported explicit format names the keyword") {
        const char* text =
            "TYPE : TSP\n"
            "DIMENSION : 3\n"
            "EDGE_WEIGHT_TYPE : EXPLICIT\n"
            "EDGE_WEIGHT_FORMAT : UPPER_COL\n"
            "EDGE_WEIGHT_SECTION\n"
            "1 2 3\n";
        CHECK_THROWS_WITH_AS(Instance::parse(text), doctest::Contains("UPPER_COL"), ParseError);
    }

    TEST_CASE("display data sections are skipped") {
        const char* text =
            "TYPE : TSP\n"
            "DIMENSION : 3\n"
            "EDGE_WEIGHT_TYPE : EXPLICIT\n"
            "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n"
            "DISPLAY_DATA_TYPE : TWOD_DISPLAY\n"
            "EDGE_WEIGHT_SECTION\n"
            "0 5 8\n"
            "5 0 9\n"
            "8 9 0\n"
            "DISPLAY_DATA_SECTION\n"
            "1 0.0 0.0\n"
            "2 1.0 0.0\n"
            "3 0.0 1.0\n"
            "EOF\n";
        Instance inst = Instance::parse(text);
        CHECK(inst.cost(0, 1) == 5);
        CHECK(inst.cost(1, 2) == 9);
    }

    TEST_CASE("cost contract rejects bad city pairs") {
        Instance inst = Instance::parse(kTriangle345);
        CHECK_THROWS_AS(inst.cost(0, 0), UsageError);
        CHECK_THROWS_AS(inst.cost(0, 3), UsageError);
        CHECK_THROWS_AS(inst.cost(-1, 1), UsageError);
    }

    TEST_CASE("symmetry holds over random pairs for every coordinate kind") {
        for (WeightKind kind : {WeightKind::Euc2D, WeightKind::Ceil2D, WeightKind::Att}) {
            Instance inst = testutil::random_euc2d(40, 99);
            std::vector<std::pair<double, double>> pts;
            for (int i = 0; i < inst.n(); ++i)
                pts.emplace_back(inst.x(i), inst.y(i));
            Instance typed = Instance::from_coords("t", kind, pts);
            std::uint64_t s = 7;
            for (int rep = 0; rep < 200; ++rep) {
                s = splitmix64(s);
                int i = static_cast<int>(s % 40);
                s = splitmix64(s);
                int j = static_cast<int>(s % 40);
                if (i == j)
                    continue;
                CHECK(typed.cost(i, j) == typed.cost(j, i));
                CHECK(typed.cost(i, j) >= 0);
            }
        }
    }

    TEST_CASE("tour_length closes the cycle") {
        Instance inst = Instance::parse(kTriangle345);
        std::vector<int> order{0, 1, 2};
        CHECK(tour_length(inst, order) == 12);
    }

    TEST_CASE("optimum registry and tour files round-trip") {
        auto reg = temp_file("mabbtsp_test_registry.txt",
                             "# known optima\n"
                             "tri 12\n"
                             "square10 40\n");
        auto optima = load_optimum_registry(reg);
        CHECK(optima.at("tri") == 12);
        CHECK(optima.at("square10") == 40);

        auto tf = temp_file("mabbtsp_test_tour.tour",
                            "NAME : tri.tour\n"
                            "TYPE : TOUR\n"
                            "DIMENSION : 3\n"
                            "TOUR_SECTION\n"
                            "1\n3\n2\n-1\nEOF\n");
        auto tour = load_tour_file(tf, 3);
        CHECK(tour == std::vector<int>{0, 2, 1});

        Instance inst = Instance::parse(kTriangle345);
        CHECK(tour_length(inst, tour) == 12);
        std::filesystem::remove(reg);
        std::filesystem::remove(tf);
    }

    TEST_CASE("from_file falls back to the file stem as name") {
        auto path = temp_file("stemname.tsp",
                              "TYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\n"
                              "NODE_COORD_SECTION\n1 0 0\n2 3 0\n3 0 4\nEOF\n");
        Instance inst = Instance::from_file(path);
        CHECK(inst.name() == "stemname");
        std::filesystem::remove(path);
    }

    TEST_CASE("published optimal tours reproduce registry optima" *
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
        CHECK(tour_length(inst, tour) == 259045);
    }
}
