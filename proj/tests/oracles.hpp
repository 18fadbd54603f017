#pragma once

// Test-only oracles, independent of the library's algebra paths.

#include <cstdint>
#include <vector>

#include <cobord/arith.hpp>

namespace oracles {

// Partition counts by direct dynamic programming over largest part.
inline std::vector<cobord::Int> partition_counts(int nmax) {
    std::vector<cobord::Int> p(nmax + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= nmax; ++part)
        for (int n = part; n <= nmax; ++n) p[n] += p[n - part];
    return p;
}

// Pascal-triangle binomial for non-negative arguments.
inline cobord::Int pascal_binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::vector<cobord::Int> row(n + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j >= 1; --j) row[j] += row[j - 1];
    return row[k];
}

// Deterministic light-weight RNG for property tests (value in [0, m)).
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long operator()(long m) { return m <= 0 ? 0 : (long)(next() % (std::uint64_t)m); }
};

}  // namespace oracles
