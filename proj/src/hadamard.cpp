#include "fclsh/hadamard.hpp"

#include "fclsh/errors.hpp"
#include "fclsh/modmath.hpp"

#include <bit>

namespace fclsh {

namespace {

void check_pow2(size_t n, const char* what) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw UsageError(std::string(what) + ": length " + std::to_string(n) +
                         " is not a power of two");
}

} // namespace

HadamardCodeMatrix generate_code_matrix(uint32_t order_log) {
    if (order_log > kMaxCodeOrderLog)
        throw ResourceError("code matrix of order 2^" + std::to_string(order_log) +
                            " exceeds the supported size");
    size_t n = size_t(1) << order_log;
    HadamardCodeMatrix m;
    m.order_log = order_log;
    m.rows.reserve(n);
    for (size_t v = 0; v < n; ++v) {
        BitVector row(n);
        for (size_t i = 0; i < n; ++i)
            if (std::popcount(v & i) & 1) row.set(i, true);
        m.rows.push_back(std::move(row));
    }
    return m;
}

void fht_in_place(std::span<int64_t> v) {
    check_pow2(v.size(), "fht");
    for (size_t half = 1; half < v.size(); half *= 2) {
        for (size_t block = 0; block < v.size(); block += 2 * half) {
            for (size_t i = block; i < block + half; ++i) {
                int64_t a = v[i];
                int64_t b = v[i + half];
                v[i] = a + b;
                v[i + half] = a - b;
            }
        }
    }
}

void fht_mod_in_place(std::span<uint64_t> v, uint64_t p) {
    if (p < 3 || p % 2 == 0) throw UsageError("fht_mod: modulus must be odd and > 2");
    check_pow2(v.size(), "fht_mod");
    for (size_t half = 1; half < v.size(); half *= 2) {
        for (size_t block = 0; block < v.size(); block += 2 * half) {
            for (size_t i = block; i < block + half; ++i) {
                uint64_t a = v[i];
                uint64_t b = v[i + half];
                v[i] = add_mod(a, b, p);
                v[i + half] = sub_mod(a, b, p);
            }
        }
    }
}

void batch_hash_kernel(std::span<uint64_t> t, uint64_t l1_mod, uint64_t p) {
    fht_mod_in_place(t, p);
    // A codeword row c_v and the sketch q satisfy <q, c_v> = (l1 - FHT[v]) / 2,
    // because FHT rows are 1 - 2*c_v.
    uint64_t half = half_mod(p);
    for (uint64_t& x : t) x = mul_mod(half, sub_mod(l1_mod, x, p), p);
}

} // namespace fclsh
