#pragma once

#include "umc/types.hpp"

#include <cstdint>
#include <random>

namespace umc {

/// splitmix64 step; used to derive independent per-task seeds from a base
/// seed without cross-task correlation.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    uint64_t s = splitmix64(seed ^ 0x6a09e667f3bcc908ULL);
    s = splitmix64(s ^ splitmix64(a));
    s = splitmix64(s ^ splitmix64(b + 0x3c6ef372fe94f82bULL));
    s = splitmix64(s ^ splitmix64(c + 0xa54ff53a5f1d36f1ULL));
    return s;
}

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(seed); }

inline Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            m(i, j) = nd(rng);
    return m;
}

}  // namespace umc
