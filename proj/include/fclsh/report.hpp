#pragma once

#include <cstdint>

namespace fclsh {

/// Per-query cost accounting shared by every search method.
///
/// collisions:  posting entries touched, duplicates included.
/// candidates:  distinct points surviving deduplication.
/// found:       candidates passing the distance check.
/// stage times: s1 = hashing (or ball enumeration keys), s2 = bucket
///              lookups plus dedup, s3 = distance verification. Seconds.
struct QueryReport {
    uint64_t collisions = 0;
    uint64_t candidates = 0;
    uint64_t found = 0;
    double time_s1 = 0.0;
    double time_s2 = 0.0;
    double time_s3 = 0.0;
};

} // namespace fclsh
