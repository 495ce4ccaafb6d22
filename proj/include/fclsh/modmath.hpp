#pragma once

#include "fclsh/errors.hpp"

#include <cstdint>

namespace fclsh {

/// Default hash field modulus, the Mersenne prime 2^61 - 1.
inline constexpr uint64_t kMersenne61 = (uint64_t(1) << 61) - 1;

inline uint64_t add_mod(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b; // a, b < p <= 2^61, no overflow
    return s >= p ? s - p : s;
}

inline uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

/// Multiplicative inverse of 2 for an odd modulus: (p+1)/2.
inline uint64_t half_mod(uint64_t p) {
    if (p < 3 || p % 2 == 0) throw UsageError("modulus must be odd and > 2");
    return (p + 1) / 2;
}

} // namespace fclsh
