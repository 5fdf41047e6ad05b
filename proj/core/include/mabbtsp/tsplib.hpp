/// @file tsplib.hpp
/// TSPLIB instance parsing and the exact integer cost functions the
/// benchmark optima assume.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mabb {

/// Supported EDGE_WEIGHT_TYPE values. Anything else is rejected at parse
/// time rather than approximated.
enum class WeightKind { Euc2D, Ceil2D, Att, Geo, Explicit };

std::string_view to_string(WeightKind kind);

/// Raised on malformed or unsupported instance files.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised on contract violations (bad city indices, unusable arguments).
class UsageError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Immutable symmetric TSP instance. Cities are 0-based internally; all
/// file formats and user-facing output use TSPLIB's 1-based ids.
class Instance {
  public:
    /// Parse TSPLIB file contents (NAME/DIMENSION/EDGE_WEIGHT_TYPE/...).
    static Instance parse(std::string_view text);
    static Instance from_file(const std::filesystem::path& path);

    /// Build a coordinate instance directly (tests, generators).
    static Instance from_coords(std::string name, WeightKind kind,
                                std::vector<std::pair<double, double>> coords);

    /// Build an EXPLICIT instance from a full symmetric matrix.
    static Instance from_matrix(std::string name, std::vector<std::vector<std::int64_t>> costs);

    const std::string& name() const { return name_; }
    int n() const { return n_; }
    WeightKind weight_kind() const { return kind_; }

    /// Exact integer distance between two distinct cities.
    std::int64_t cost(int i, int j) const {
        if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_)
            throw UsageError("Instance::cost: invalid city pair (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
        if (!matrix_.empty())
            return matrix_[static_cast<std::size_t>(i) * n_ + j];
        return compute_cost(i, j);
    }

    double x(int i) const { return coords_[i].first; }
    double y(int i) const { return coords_[i].second; }
    bool has_coords() const { return !coords_.empty(); }

    std::optional<std::int64_t> known_optimum() const { return known_optimum_; }
    void set_known_optimum(std::int64_t value) { known_optimum_ = value; }

  private:
    Instance() = default;
    void finalize();
    std::int64_t compute_cost(int i, int j) const;

    // Full cost matrices are cached only at desk scale; larger coordinate
    // instances compute distances on demand to stay O(n) in memory.
    static constexpr int kMatrixCacheLimit = 5000;

    std::string name_;
    int n_ = 0;
    WeightKind kind_ = WeightKind::Euc2D;
    std::vector<std::pair<double, double>> coords_;
    std::vector<std::int32_t> matrix_; // n*n, present for EXPLICIT or cached kinds
    std::optional<std::int64_t> known_optimum_;
};

/// Total cost of a closed tour given as a permutation of 0..n-1.
std::int64_t tour_length(const Instance& inst, std::span<const int> order);

/// Registry side-file: `name<whitespace>optimum` per line, '#' comments.
std::unordered_map<std::string, std::int64_t> load_optimum_registry(
    const std::filesystem::path& path);

/// TSPLIB .tour / .opt.tour file (TOUR_SECTION, 1-based ids, -1 terminator).
std::vector<int> load_tour_file(const std::filesystem::path& path, int n);

} // namespace mabb
