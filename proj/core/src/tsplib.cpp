#include "mabbtsp/tsplib.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mabb {

namespace {

// TSPLIB's nint(): round half away from zero is never needed here since
// distances are non-negative before rounding.
std::int64_t nint(double x) { return static_cast<std::int64_t>(x + 0.5); }

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

// "KEYWORD : value" or "KEYWORD: value" or bare "KEYWORD".
bool split_keyword(const std::string& line, std::string& key, std::string& value) {
    std::size_t colon = line.find(':');
    if (colon == std::string::npos) {
        key = upper(trim(line));
        value.clear();
        return !key.empty();
    }
    key = upper(trim(line.substr(0, colon)));
    value = trim(line.substr(colon + 1));
    return !key.empty();
}

double geo_radians(double coord) {
    // Degree.minute encoding: integral part is degrees, fraction is
    // minutes. The reference checkers truncate the degree part (they do
    // not round), and the published optima assume that behavior.
    constexpr double kPi = 3.141592;
    double deg = std::trunc(coord);
    double min = coord - deg;
    return kPi * (deg + 5.0 * min / 3.0) / 180.0;
}

enum class MatrixLayout { FullMatrix, UpperRow, LowerRow, UpperDiagRow, LowerDiagRow };

std::optional<MatrixLayout> parse_layout(const std::string& fmt) {
    if (fmt == "FULL_MATRIX")
        return MatrixLayout::FullMatrix;
    if (fmt == "UPPER_ROW")
        return MatrixLayout::UpperRow;
    if (fmt == "LOWER_ROW")
        return MatrixLayout::LowerRow;
    if (fmt == "UPPER_DIAG_ROW")
        return MatrixLayout::UpperDiagRow;
    if (fmt == "LOWER_DIAG_ROW")
        return MatrixLayout::LowerDiagRow;
    return std::nullopt;
}

std::size_t layout_entry_count(MatrixLayout layout, std::size_t n) {
    switch (layout) {
    case MatrixLayout::FullMatrix:
        return n * n;
    case MatrixLayout::UpperRow:
    case MatrixLayout::LowerRow:
        return n * (n - 1) / 2;
    case MatrixLayout::UpperDiagRow:
    case MatrixLayout::LowerDiagRow:
        return n * (n + 1) / 2;
    }
    return 0;
}

} // namespace

std::string_view to_string(WeightKind kind) {
    switch (kind) {
    case WeightKind::Euc2D:
        return "EUC_2D";
    case WeightKind::Ceil2D:
        return "CEIL_2D";
    case WeightKind::Att:
        return "ATT";
    case WeightKind::Geo:
        return "GEO";
    case WeightKind::Explicit:
        return "EXPLICIT";
    }
    return "?";
}

std::int64_t Instance::compute_cost(int i, int j) const {
    double dx = coords_[i].first - coords_[j].first;
    double dy = coords_[i].second - coords_[j].second;
    switch (kind_) {
    case WeightKind::Euc2D:
        return nint(std::sqrt(dx * dx + dy * dy));
    case WeightKind::Ceil2D:
        return static_cast<std::int64_t>(std::ceil(std::sqrt(dx * dx + dy * dy)));
    case WeightKind::Att: {
        double r = std::sqrt((dx * dx + dy * dy) / 10.0);
        std::int64_t t = nint(r);
        return static_cast<double>(t) < r ? t + 1 : t;
    }
    case WeightKind::Geo: {
        constexpr double kEarthRadius = 6378.388;
        double lat_i = geo_radians(coords_[i].first);
        double lon_i = geo_radians(coords_[i].second);
        double lat_j = geo_radians(coords_[j].first);
        double lon_j = geo_radians(coords_[j].second);
        double q1 = std::cos(lon_i - lon_j);
        double q2 = std::cos(lat_i - lat_j);
        double q3 = std::cos(lat_i + lat_j);
        return static_cast<std::int64_t>(
            kEarthRadius * std::acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0);
    }
    case WeightKind::Explicit:
        break;
    }
    throw UsageError("Instance::compute_cost: explicit instance without matrix");
}

void Instance::finalize() {
    if (n_ < 3)
        throw ParseError("instance must have at least 3 cities, got " + std::to_string(n_));
    if (kind_ != WeightKind::Explicit && n_ <= kMatrixCacheLimit && matrix_.empty()) {
        matrix_.assign(static_cast<std::size_t>(n_) * n_, 0);
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
                auto c = static_cast<std::int32_t>(compute_cost(i, j));
                matrix_[static_cast<std::size_t>(i) * n_ + j] = c;
                matrix_[static_cast<std::size_t>(j) * n_ + i] = c;
            }
    }
}

Instance Instance::from_coords(std::string name, WeightKind kind,
                               std::vector<std::pair<double, double>> coords) {
    if (kind == WeightKind::Explicit)
        throw UsageError("from_coords: EXPLICIT instances need a matrix");
    Instance inst;
    inst.name_ = std::move(name);
    inst.kind_ = kind;
    inst.n_ = static_cast<int>(coords.size());
    inst.coords_ = std::move(coords);
    inst.finalize();
    return inst;
}

Instance Instance::from_matrix(std::string name, std::vector<std::vector<std::int64_t>> costs) {
    Instance inst;
    inst.name_ = std::move(name);
    inst.kind_ = WeightKind::Explicit;
    inst.n_ = static_cast<int>(costs.size());
    if (inst.n_ < 3)
        throw ParseError("instance must have at least 3 cities");
    inst.matrix_.assign(static_cast<std::size_t>(inst.n_) * inst.n_, 0);
    for (int i = 0; i < inst.n_; ++i) {
        if (static_cast<int>(costs[i].size()) != inst.n_)
            throw ParseError("from_matrix: row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < inst.n_; ++j) {
            if (i != j && costs[i][j] != costs[j][i])
                throw ParseError("from_matrix: asymmetric entry at (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
            inst.matrix_[static_cast<std::size_t>(i) * inst.n_ + j] =
                static_cast<std::int32_t>(costs[i][j]);
        }
    }
    return inst;
}

Instance Instance::parse(std::string_view text) {
    Instance inst;
    std::istringstream in{std::string(text)};

    std::string line;
    int line_no = 0;
    int dimension = -1;
    std::string weight_type;
    std::string weight_format;
    std::vector<std::pair<double, double>> coords;
    std::vector<bool> coord_seen;
    std::vector<double> weights;
    bool in_coords = false;
    bool in_weights = false;
    bool in_skip_section = false;

    auto fail = [&](const std::string& msg) -> void {
        throw ParseError(msg + " (line " + std::to_string(line_no) + ")");
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty())
            continue;

        // Section payloads are whitespace-separated numbers.
        if (in_coords) {
            if (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '-' || t[0] == '+') {
                std::istringstream ls(t);
                long id;
                double cx, cy;
                if (!(ls >> id >> cx >> cy))
                    fail("malformed coordinate line");
                if (id < 1 || id > dimension)
                    fail("coordinate id " + std::to_string(id) + " out of range");
                coords[id - 1] = {cx, cy};
                coord_seen[id - 1] = true;
                continue;
            }
            in_coords = false;
        }
        if (in_weights) {
            if (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '-' || t[0] == '+' ||
                t[0] == '.') {
                std::istringstream ls(t);
                double v;
                while (ls >> v)
                    weights.push_back(v);
                continue;
            }
            in_weights = false;
        }
        if (in_skip_section) {
            if (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '-' || t[0] == '+' ||
                t[0] == '.')
                continue;
            in_skip_section = false;
        }

        std::string key, value;
        if (!split_keyword(t, key, value))
            continue;

        if (key == "NAME") {
            inst.name_ = value;
        } else if (key == "TYPE") {
            std::string v = upper(value);
            if (v != "TSP")
                fail("unsupported TYPE: " + value);
        } else if (key == "COMMENT") {
            // ignored
        } else if (key == "DIMENSION") {
            dimension = std::stoi(value);
            if (dimension < 3)
                fail("DIMENSION must be at least 3");
        } else if (key == "EDGE_WEIGHT_TYPE") {
            weight_type = upper(value);
        } else if (key == "EDGE_WEIGHT_FORMAT") {
            weight_format = upper(value);
        } else if (key == "NODE_COORD_TYPE" || key == "DISPLAY_DATA_TYPE") {
            // informational only
        } else if (key == "NODE_COORD_SECTION") {
            if (dimension <= 0)
                fail("NODE_COORD_SECTION before DIMENSION");
            coords.assign(dimension, {0.0, 0.0});
            coord_seen.assign(dimension, false);
            in_coords = true;
        } else if (key == "EDGE_WEIGHT_SECTION") {
            if (dimension <= 0)
                fail("EDGE_WEIGHT_SECTION before DIMENSION");
            in_weights = true;
        } else if (key == "DISPLAY_DATA_SECTION" || key == "FIXED_EDGES_SECTION") {
            in_skip_section = true;
        } else if (key == "EOF") {
            break;
        } else {
            fail("unsupported keyword: " + key);
        }
    }

    if (dimension <= 0)
        throw ParseError("missing DIMENSION");
    inst.n_ = dimension;

    if (weight_type == "EUC_2D")
        inst.kind_ = WeightKind::Euc2D;
    else if (weight_type == "CEIL_2D")
        inst.kind_ = WeightKind::Ceil2D;
    else if (weight_type == "ATT")
        inst.kind_ = WeightKind::Att;
    else if (weight_type == "GEO")
        inst.kind_ = WeightKind::Geo;
    else if (weight_type == "EXPLICIT")
        inst.kind_ = WeightKind::Explicit;
    else
        throw ParseError("unsupported EDGE_WEIGHT_TYPE: " +
                         (weight_type.empty() ? std::string("<missing>") : weight_type));

    if (inst.kind_ == WeightKind::Explicit) {
        auto layout = parse_layout(weight_format);
        if (!layout)
            throw ParseError("unsupported EDGE_WEIGHT_FORMAT: " +
                             (weight_format.empty() ? std::string("<missing>") : weight_format));
        std::size_t need = layout_entry_count(*layout, static_cast<std::size_t>(dimension));
        if (weights.size() != need)
            throw ParseError("EDGE_WEIGHT_SECTION has " + std::to_string(weights.size()) +
                             " entries, expected " + std::to_string(need));

        std::size_t n = static_cast<std::size_t>(dimension);
        inst.matrix_.assign(n * n, 0);
        auto put = [&](std::size_t i, std::size_t j, double v) {
            auto c = static_cast<std::int32_t>(v);
            inst.matrix_[i * n + j] = c;
            inst.matrix_[j * n + i] = c;
        };
        std::size_t idx = 0;
        switch (*layout) {
        case MatrixLayout::FullMatrix:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    double v = weights[idx++];
                    if (j > i)
                        put(i, j, v);
                    else if (j < i && inst.matrix_[j * n + i] != static_cast<std::int32_t>(v))
                        throw ParseError("FULL_MATRIX is not symmetric at (" + std::to_string(i) +
                                         ", " + std::to_string(j) + ")");
                }
            break;
        case MatrixLayout::UpperRow:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    put(i, j, weights[idx++]);
            break;
        case MatrixLayout::LowerRow:
            for (std::size_t i = 1; i < n; ++i)
                for (std::size_t j = 0; j < i; ++j)
                    put(i, j, weights[idx++]);
            break;
        case MatrixLayout::UpperDiagRow:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j)
                    put(i, j, weights[idx++]);
            break;
        case MatrixLayout::LowerDiagRow:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j <= i; ++j)
                    put(i, j, weights[idx++]);
            break;
        }
        for (std::size_t i = 0; i < n; ++i)
            inst.matrix_[i * n + i] = 0;
    } else {
        if (coords.empty())
            throw ParseError("missing NODE_COORD_SECTION");
        int have = static_cast<int>(std::count(coord_seen.begin(), coord_seen.end(), true));
        if (have != dimension)
            throw ParseError("DIMENSION is " + std::to_string(dimension) + " but " +
                             std::to_string(have) + " coordinate lines were given (line " +
                             std::to_string(line_no) + ")");
        inst.coords_ = std::move(coords);
    }

    inst.finalize();
    return inst;
}

Instance Instance::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open instance file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    Instance inst = parse(buf.str());
    if (inst.name_.empty())
        inst.name_ = path.stem().string();
    return inst;
}

std::int64_t tour_length(const Instance& inst, std::span<const int> order) {
    if (static_cast<int>(order.size()) != inst.n())
        throw UsageError("tour_length: order size does not match instance");
    std::int64_t total = 0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        total += inst.cost(order[i], order[i + 1]);
    total += inst.cost(order.back(), order.front());
    return total;
}

std::unordered_map<std::string, std::int64_t> load_optimum_registry(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open optimum registry: " + path.string());
    std::unordered_map<std::string, std::int64_t> out;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        std::istringstream ls(t);
        std::string name;
        std::int64_t opt;
        if (!(ls >> name >> opt))
            throw ParseError("malformed registry line: " + t);
        out[name] = opt;
    }
    return out;
}

std::vector<int> load_tour_file(const std::filesystem::path& path, int n) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open tour file: " + path.string());
    std::vector<int> tour;
    tour.reserve(n);
    std::string line;
    bool in_section = false;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty())
            continue;
        if (!in_section) {
            std::string key, value;
            split_keyword(t, key, value);
            if (key == "TOUR_SECTION")
                in_section = true;
            continue;
        }
        std::istringstream ls(t);
        long id;
        while (ls >> id) {
            if (id == -1)
                goto done;
            if (id < 1 || id > n)
                throw ParseError("tour file city id out of range: " + std::to_string(id));
            tour.push_back(static_cast<int>(id - 1));
        }
    }
done:
    if (static_cast<int>(tour.size()) != n)
        throw ParseError("tour file has " + std::to_string(tour.size()) + " cities, expected " +
                         std::to_string(n));
    return tour;
}

} // namespace mabb
