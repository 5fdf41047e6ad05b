#include "mabbtsp/backbone.hpp"

#include <algorithm>
#include <ostream>
#include <vector>

namespace mabb {

void BackboneStore::record_tour(std::span<const int> order) {
    if (static_cast<int>(order.size()) != n_)
        throw UsageError("BackboneStore::record_tour: tour size does not match instance");
    std::vector<char> seen(n_, 0);
    for (int c : order) {
        if (c < 0 || c >= n_ || seen[c])
            throw UsageError("BackboneStore::record_tour: not a permutation of cities");
        seen[c] = 1;
    }
    ++trials_;
    for (std::size_t i = 0; i < order.size(); ++i) {
        int a = order[i];
        int b = order[(i + 1) % order.size()];
        ++counts_[key(a, b)];
    }
}

std::int64_t BackboneStore::total_count() const {
    std::int64_t sum = 0;
    for (const auto& [k, c] : counts_)
        sum += c;
    return sum;
}

void BackboneStore::dump(std::ostream& out) const {
    std::vector<std::pair<std::uint64_t, std::int64_t>> rows(counts_.begin(), counts_.end());
    std::sort(rows.begin(), rows.end());
    for (const auto& [k, c] : rows)
        out << ((k >> 32) + 1) << ' ' << ((k & 0xffffffffu) + 1) << ' ' << c << '\n';
}

} // namespace mabb
