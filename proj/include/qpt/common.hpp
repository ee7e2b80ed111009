#pragma once

#include <cstddef>
#include <cstdint>

namespace qpt {

inline constexpr bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

// log2 of a power of two; callers validate first.
inline constexpr std::size_t log2_exact(std::size_t n) {
    std::size_t r = 0;
    while (n > 1) {
        n >>= 1;
        ++r;
    }
    return r;
}

inline constexpr std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Index n + offset on a periodic axis of the given size.
inline std::size_t periodic_index(std::size_t n, long offset, std::size_t size) {
    long i = (static_cast<long>(n) + offset) % static_cast<long>(size);
    if (i < 0) i += static_cast<long>(size);
    return static_cast<std::size_t>(i);
}

// Seed used by the CLI and the verification suite when none is given
// (the 64-bit golden-ratio constant).
inline constexpr std::uint64_t default_seed = 0x9e3779b97f4a7c15ull;

// Fixed-point mix with good avalanche; used to derive per-row RNG streams.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace qpt
