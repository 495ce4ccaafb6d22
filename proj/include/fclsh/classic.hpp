#pragma once

#include "fclsh/bitvec.hpp"
#include "fclsh/modmath.hpp"
#include "fclsh/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fclsh {

/// Classic bit-sampling LSH: L independent tables, each hashing k uniformly
/// sampled positions (with replacement) through a random linear field hash.
/// Misses a pair at distance r with probability (1 - (1-r/d)^k)^L, so k is
/// tuned against a target false negative ratio; there is no exactness
/// guarantee, which is the point of comparing against covering families.
struct BitSampleFamily {
    size_t dims = 0;
    uint32_t k = 0;
    size_t tables = 0;
    uint64_t prime = kMersenne61;
    std::vector<uint32_t> positions; // tables * k sampled positions
    std::vector<uint64_t> seeds;     // matching field elements

    size_t table_count() const { return tables; }
};

/// Largest k the tuner will return, as a multiple of dims.
inline constexpr uint32_t kMaxSamplesPerDim = 4;

/// Bits per table so that the miss probability at distance exactly r stays
/// around delta across L tables:
///   k = ceil( log(1 - delta^(1/L)) / log(1 - r/d) ),
/// clamped into [1, 4d]. delta must lie in (0, 1) and r below d.
uint32_t choose_k(size_t dims, uint32_t radius, size_t tables, double delta);

BitSampleFamily build_bit_sample_family(size_t dims, uint32_t k, size_t tables, Rng& rng,
                                        uint64_t prime = kMersenne61);

/// Bucket values of q in every table: sum of the seeds whose sampled
/// position is set in q, mod prime. O(L * k).
void hash_tables_into(const BitSampleFamily& f, const BitVector& q, std::span<uint64_t> out);
std::vector<uint64_t> hash_tables(const BitSampleFamily& f, const BitVector& q);

} // namespace fclsh
