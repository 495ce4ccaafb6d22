#include "fclsh/bitvec.hpp"

#include "fclsh/errors.hpp"

#include <bit>

namespace fclsh {

namespace {

void check_same_dims(const BitVector& x, const BitVector& y, const char* op) {
    if (x.dims() != y.dims())
        throw UsageError(std::string(op) + ": dims mismatch, " + std::to_string(x.dims()) +
                         " vs " + std::to_string(y.dims()));
}

} // namespace

BitVector::BitVector(size_t dims) : dims_(dims), words_((dims + 63) / 64, 0) {}

BitVector BitVector::from_string(std::string_view s) {
    BitVector v(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '1')
            v.set(i, true);
        else if (c != '0')
            throw DataError("bit string: unexpected character '" + std::string(1, c) + "'");
    }
    return v;
}

BitVector BitVector::random(size_t dims, Rng& rng) {
    BitVector v(dims);
    for (size_t w = 0; w < v.words_.size(); ++w) v.words_[w] = rng.next_u64();
    if (dims % 64 != 0 && !v.words_.empty())
        v.words_.back() &= (uint64_t(1) << (dims % 64)) - 1;
    return v;
}

bool BitVector::get(size_t i) const {
    return (words_[i / 64] >> (i % 64)) & 1;
}

void BitVector::set(size_t i, bool value) {
    uint64_t mask = uint64_t(1) << (i % 64);
    if (value)
        words_[i / 64] |= mask;
    else
        words_[i / 64] &= ~mask;
}

BitVector BitVector::slice(size_t begin, size_t end) const {
    BitVector out(end - begin);
    for (size_t i = begin; i < end; ++i)
        if (get(i)) out.set(i - begin, true);
    return out;
}

std::string BitVector::to_string() const {
    std::string s(dims_, '0');
    for (size_t i = 0; i < dims_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

size_t popcount(const BitVector& v) {
    size_t total = 0;
    for (uint64_t w : v.words()) total += static_cast<size_t>(std::popcount(w));
    return total;
}

size_t hamming_distance(const BitVector& x, const BitVector& y) {
    check_same_dims(x, y, "hamming_distance");
    size_t total = 0;
    for (size_t w = 0; w < x.word_count(); ++w)
        total += static_cast<size_t>(std::popcount(x.word(w) ^ y.word(w)));
    return total;
}

BitVector and_mask(const BitVector& x, const BitVector& y) {
    check_same_dims(x, y, "and_mask");
    BitVector out(x.dims());
    for (size_t w = 0; w < x.word_count(); ++w)
        out.words_[w] = x.word(w) & y.word(w);
    return out;
}

BitVector xor_bits(const BitVector& x, const BitVector& y) {
    check_same_dims(x, y, "xor_bits");
    BitVector out(x.dims());
    for (size_t w = 0; w < x.word_count(); ++w)
        out.words_[w] = x.word(w) ^ y.word(w);
    return out;
}

} // namespace fclsh
