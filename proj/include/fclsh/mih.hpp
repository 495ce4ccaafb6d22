#pragma once

#include "fclsh/bitvec.hpp"
#include "fclsh/dataset.hpp"
#include "fclsh/posting.hpp"
#include "fclsh/report.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace fclsh {

/// Multi-index hashing: cut vectors into m contiguous substrings and store
/// each substring exactly in its own table. A pair within distance r agrees
/// with some substring up to floor(r/m), so querying enumerates the Hamming
/// ball of that radius around each query substring. Exact (no false
/// negatives) but the candidate set grows with the ball volume.
struct MihIndex {
    size_t dims = 0;
    uint32_t parts = 0;
    std::vector<std::pair<size_t, size_t>> bounds; // [begin, end) per substring
    std::vector<PostingTable> tables;
    const Dataset* data = nullptr;
};

inline constexpr uint64_t kDefaultBallBudget = 10'000'000;

/// m = ceil(d / log2(n)), giving each substring about log2(n) bits so the
/// per-table buckets stay near constant occupancy.
uint32_t default_mih_parts(size_t dims, size_t n);

/// Substrings must fit a 64-bit key, so parts >= ceil(d/64).
MihIndex build_mih(const Dataset& data, uint32_t parts);

/// Every vector within the given distance of center, center first, then
/// ascending flip weight. Refuses (ResourceError) when the ball holds more
/// than budget vectors.
std::vector<BitVector> enumerate_ball(const BitVector& center, uint32_t radius,
                                      uint64_t budget = kDefaultBallBudget);

/// Ball volume sum_{w<=radius} binom(dims, w), saturating at 2^63.
uint64_t ball_volume(size_t dims, uint32_t radius);

struct MihQueryResult {
    std::vector<uint32_t> candidates; // distinct ids, ascending
    std::vector<uint32_t> found;      // candidates within radius, ascending
    QueryReport report;
};

MihQueryResult query_mih(const MihIndex& index, const BitVector& q, uint32_t radius,
                         uint64_t ball_budget = kDefaultBallBudget);

} // namespace fclsh
