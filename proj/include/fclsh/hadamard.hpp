#pragma once

#include "fclsh/bitvec.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fclsh {

/// Binary Hadamard code matrix of order 2^order_log. Entry [v][i] is the
/// parity of popcount(v AND i), so row 0 and column 0 are all zero, every
/// other row is balanced, and the matrix is symmetric. Rows 1..2^m-1 are
/// the codewords callers use; row 0 is kept so indices line up.
struct HadamardCodeMatrix {
    uint32_t order_log = 0;
    std::vector<BitVector> rows;

    size_t order() const { return size_t(1) << order_log; }
    const BitVector& row(size_t v) const { return rows[v]; }
};

/// Largest supported order_log; 2^(2*14) bits is a 32 MB matrix.
inline constexpr uint32_t kMaxCodeOrderLog = 14;

HadamardCodeMatrix generate_code_matrix(uint32_t order_log);

/// In-place fast Hadamard transform (Sylvester +1/-1 matrix times v).
/// Length must be a power of two. Unnormalized: applying twice scales by n.
void fht_in_place(std::span<int64_t> v);

/// Same butterfly network over Z_p. Entries must already be reduced mod p.
void fht_mod_in_place(std::span<uint64_t> v, uint64_t p);

/// Turns a scattered sketch t into the 2^m hash values
///   h[v] = (l1 - FHT(t)[v]) / 2  (mod p),
/// where l1 is the total mass of the sketch mod p. Entry 0 of the result is
/// the hash of the all-zero codeword; callers working with a covering family
/// drop it. In place, t.size() a power of two.
void batch_hash_kernel(std::span<uint64_t> t, uint64_t l1_mod, uint64_t p);

} // namespace fclsh
