#include "mabbtsp/oracle.hpp"

#include <limits>

namespace mabb {

namespace {

struct Enumerator {
    const Instance& inst;
    int n;
    std::vector<int> current;
    std::vector<char> used;
    std::int64_t best_len = std::numeric_limits<std::int64_t>::max();
    std::vector<int> best;

    void extend(int depth, std::int64_t partial) {
        if (partial >= best_len)
            return;
        if (depth == n) {
            std::int64_t total = partial + inst.cost(current.back(), current.front());
            if (total < best_len) {
                best_len = total;
                best = current;
            }
            return;
        }
        for (int c = 1; c < n; ++c) {
            if (used[c])
                continue;
            used[c] = 1;
            current.push_back(c);
            extend(depth + 1, partial + inst.cost(current[depth - 1], c));
            current.pop_back();
            used[c] = 0;
        }
    }
};

} // namespace

OracleResult exact_optimum(const Instance& inst) {
    if (inst.n() > 12)
        throw UsageError("exact_optimum: refusing n = " + std::to_string(inst.n()) +
                         " (exhaustive search is limited to n <= 12)");
    Enumerator e{inst, inst.n(), {}, std::vector<char>(inst.n(), 0),
                 std::numeric_limits<std::int64_t>::max(), {}};
    e.current.reserve(inst.n());
    e.current.push_back(0);
    e.used[0] = 1;
    e.extend(1, 0);
    return {e.best_len, e.best};
}

} // namespace mabb
