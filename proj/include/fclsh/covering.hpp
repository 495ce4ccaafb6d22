#pragma once

#include "fclsh/bitvec.hpp"
#include "fclsh/modmath.hpp"
#include "fclsh/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fclsh {

/// How input positions are attached to code matrix columns.
///
/// general:  d > 2^(r+1). Each position draws a random column, by default
///           from [1, 2^(r+1)) so no position is wasted on the all-zero
///           column; see CoveringOptions.
/// specific: d <= 2^(r+1). The input is zero-padded to width 2^(r+1) and a
///           random permutation spreads the real positions over all columns,
///           so the mapping is injective.
enum class ConstructionKind { general, specific };

/// An r-covering family of 2^(r+1)-1 masks over {0,1}^d.
///
/// Mask g_v keeps position i iff codeword v of the Hadamard code has a 1 in
/// column mapping[i]. Any two vectors at distance <= r agree on some masked
/// projection (no false negatives), and the expected number of agreeing
/// masks for a pair at distance D is below 2^(r+1-D).
///
/// Bucket values are field hashes of the masked vector: each position
/// carries a random field element seeds[i], and table v sums the seeds of
/// positions that are set in the query and kept by g_v, mod prime.
struct CoveringFamily {
    size_t dims = 0;
    uint32_t radius = 0;
    uint64_t prime = kMersenne61;
    ConstructionKind kind = ConstructionKind::general;
    std::vector<uint32_t> mapping; // column per position, < 2^(radius+1)
    std::vector<uint64_t> seeds;   // field element per position, < prime

    size_t code_order() const { return size_t(1) << (radius + 1); }
    size_t table_count() const { return code_order() - 1; }
};

struct CoveringOptions {
    uint64_t prime = kMersenne61;
    /// Let the general mapping draw column 0 as well. Positions on column 0
    /// are sampled by no mask; the guarantees hold either way.
    bool include_zero_column = false;
};

/// Caps the per-family table count at 2^21 - 1.
inline constexpr uint32_t kMaxCoveringRadius = 20;

CoveringFamily build_covering_family(size_t dims, uint32_t radius, ConstructionKind kind,
                                     Rng& rng, const CoveringOptions& opt = {});

/// Same, with the kind derived from the widths: general iff d > 2^(r+1).
CoveringFamily build_covering_family(size_t dims, uint32_t radius, Rng& rng,
                                     const CoveringOptions& opt = {});

/// Family with an explicit mapping and seeds, validated. For reproducing
/// known configurations in tests.
CoveringFamily make_covering_family(size_t dims, uint32_t radius, ConstructionKind kind,
                                    std::vector<uint32_t> mapping, std::vector<uint64_t> seeds,
                                    uint64_t prime = kMersenne61);

/// Mask g_v as a d-wide vector, v in [1, 2^(r+1)).
BitVector mask_row(const CoveringFamily& f, size_t v);

/// Number of masks under which x and y project identically, i.e. tables
/// where the pair lands in the same bucket (up to field hash collisions,
/// which have probability < d/prime per table).
size_t collision_count(const CoveringFamily& f, const BitVector& x, const BitVector& y);

/// All 2^(r+1)-1 bucket values of q, one mask at a time. O(nnz(q) * L).
void hash_reference_into(const CoveringFamily& f, const BitVector& q, std::span<uint64_t> out);
std::vector<uint64_t> hash_reference(const CoveringFamily& f, const BitVector& q);

/// Same values through the batch kernel: scatter the seeds of set positions
/// onto their columns, then one fast Hadamard transform produces every
/// table's value at once. O(nnz(q) + L log L).
void hash_batch_into(const CoveringFamily& f, const BitVector& q, std::span<uint64_t> out,
                     std::vector<uint64_t>& scratch);
std::vector<uint64_t> hash_batch(const CoveringFamily& f, const BitVector& q);

} // namespace fclsh
