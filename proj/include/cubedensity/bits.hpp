#pragma once

#include <bit>
#include <cassert>
#include <cstdint>

namespace cubedensity {

inline int popcount64(std::uint64_t x) { return std::popcount(x); }

// Next bitmask with the same popcount, in ascending numeric order (Gosper).
inline std::uint64_t next_subset_mask(std::uint64_t m) {
    std::uint64_t c = m & (0 - m);
    std::uint64_t r = m + c;
    return r | (((m ^ r) >> 2) / c);
}

// Next value b' > b with b' & avoid == 0, ascending. Caller bounds the loop
// by the known count; on overflow this wraps to 0.
inline std::uint64_t next_base(std::uint64_t b, std::uint64_t avoid) {
    return ((b | avoid) + 1) & ~avoid;
}

// Deposit the low popcount(mask) bits of u onto the set bits of mask,
// lowest mask bit first.
inline std::uint64_t deposit_bits(std::uint64_t u, std::uint64_t mask) {
    std::uint64_t out = 0;
    while (u != 0 && mask != 0) {
        std::uint64_t low = mask & (0 - mask);
        if (u & 1) out |= low;
        u >>= 1;
        mask ^= low;
    }
    return out;
}

// Extract the bits of v at the set positions of mask, packed low, lowest
// mask bit first.
inline std::uint64_t extract_bits(std::uint64_t v, std::uint64_t mask) {
    std::uint64_t out = 0;
    int j = 0;
    while (mask != 0) {
        std::uint64_t low = mask & (0 - mask);
        if (v & low) out |= std::uint64_t{1} << j;
        ++j;
        mask ^= low;
    }
    return out;
}

// Exact for all n <= 64 where the result fits (C(64,32) < 2^63).
inline std::uint64_t binomial_u64(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return static_cast<std::uint64_t>(r);
}

// Deterministic 64-bit generator used for all seeded randomness in the
// project; identical streams on every platform.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound > 0, rejection sampled.
    std::uint64_t below(std::uint64_t bound) {
        assert(bound > 0);
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform in [0,1) with 53 bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// FNV-1a, used for run-record digests.
inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace cubedensity
