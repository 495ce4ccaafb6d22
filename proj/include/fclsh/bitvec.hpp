#pragma once

#include "fclsh/rng.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fclsh {

/// Fixed-width binary vector packed into 64-bit words.
///
/// Bit i lives in word i/64 at offset i%64. A string "0011" parsed
/// left to right assigns position 0 the first character, so the example
/// has bits 2 and 3 set. Padding bits past dims() are always zero; every
/// mutator maintains that, which makes whole-word popcounts safe.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(size_t dims);

    /// Parse from '0'/'1' characters, leftmost character = position 0.
    static BitVector from_string(std::string_view s);
    static BitVector random(size_t dims, Rng& rng);

    size_t dims() const { return dims_; }
    size_t word_count() const { return words_.size(); }
    uint64_t word(size_t w) const { return words_[w]; }
    std::span<const uint64_t> words() const { return words_; }

    bool get(size_t i) const;
    void set(size_t i, bool value);

    /// Bits [begin, end) as a new (end-begin)-wide vector.
    BitVector slice(size_t begin, size_t end) const;

    std::string to_string() const;

    bool operator==(const BitVector& other) const = default;

private:
    friend BitVector and_mask(const BitVector&, const BitVector&);
    friend BitVector xor_bits(const BitVector&, const BitVector&);

    size_t dims_ = 0;
    std::vector<uint64_t> words_;
};

size_t popcount(const BitVector& v);

/// Number of positions where x and y differ. Widths must match.
size_t hamming_distance(const BitVector& x, const BitVector& y);

/// Coordinate-wise AND. Widths must match.
BitVector and_mask(const BitVector& x, const BitVector& y);

/// Coordinate-wise XOR. Widths must match.
BitVector xor_bits(const BitVector& x, const BitVector& y);

/// Call fn(i) for every set position i in ascending order.
template <typename Fn>
void for_each_set_bit(const BitVector& v, Fn&& fn) {
    for (size_t w = 0; w < v.word_count(); ++w) {
        uint64_t bits = v.word(w);
        while (bits != 0) {
            unsigned tz = static_cast<unsigned>(__builtin_ctzll(bits));
            fn(w * 64 + tz);
            bits &= bits - 1;
        }
    }
}

} // namespace fclsh
