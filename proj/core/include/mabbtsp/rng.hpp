/// @file rng.hpp
/// Deterministic seed splitting. One master seed fans out to per-run and
/// per-trial streams so traces stay comparable across modes and job counts.

#pragma once

#include <cstdint>
#include <random>

namespace mabb {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
    return splitmix64(master ^ splitmix64(salt));
}

inline std::mt19937_64 make_rng(std::uint64_t master, std::uint64_t salt) {
    return std::mt19937_64(derive_seed(master, salt));
}

} // namespace mabb
