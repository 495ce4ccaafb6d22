#pragma once

#include "fclsh/bitvec.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fclsh {

/// A set of equal-width binary vectors, ids 0..size()-1 in file order.
struct Dataset {
    size_t dims = 0;
    std::vector<BitVector> points;

    size_t size() const { return points.size(); }
    const BitVector& operator[](size_t i) const { return points[i]; }
};

/// Binary container: "FCL1" magic, then n and d as little-endian u64,
/// then n rows of ceil(d/8) bytes. Bit j of a row sits in byte j/8 at
/// offset j%8; padding bits in the last byte are zero.
void save_dataset(const Dataset& ds, const std::string& path);

/// Text container: one '0'/'1' line per vector, equal lengths.
void save_dataset_text(const Dataset& ds, const std::string& path);

/// Reads either container, sniffing the magic.
Dataset load_dataset(const std::string& path);

} // namespace fclsh
