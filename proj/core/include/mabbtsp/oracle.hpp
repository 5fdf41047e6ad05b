/// @file oracle.hpp
/// Exhaustive exact solver for tiny instances. Independent of the local
/// search path; used for verification and the `oracle` CLI command.

#pragma once

#include <cstdint>
#include <vector>

#include "mabbtsp/tsplib.hpp"

namespace mabb {

struct OracleResult {
    std::int64_t length = 0;
    std::vector<int> tour;
};

/// Exact optimum by permutation enumeration with first city fixed and
/// partial-length pruning. Refuses instances with n > 12.
OracleResult exact_optimum(const Instance& inst);

} // namespace mabb
