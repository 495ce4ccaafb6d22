#pragma once

#include "fclsh/dataset.hpp"
#include "fclsh/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fclsh {

/// `count` data points at exactly `distance` flips from each query.
struct PlantSpec {
    uint32_t distance = 0;
    uint32_t count = 0;
};

struct SyntheticSpec {
    size_t data_size = 0;
    size_t dims = 0;
    size_t query_count = 0;
    std::vector<PlantSpec> planted;
    uint64_t seed = 0;
};

struct SyntheticWorkload {
    Dataset data;
    Dataset queries;
};

/// Uniform random queries and data, with the requested neighbors planted at
/// exact distances. Planted points fill the low ids, query by query, then
/// uniform background points make up the rest. Queries are not members of
/// the dataset.
SyntheticWorkload gen_synthetic(const SyntheticSpec& spec);

struct TruthEntry {
    uint32_t query = 0;
    uint32_t point = 0;
    uint32_t distance = 0;
};

/// All (query, point) pairs within a radius, by brute force scan.
struct GroundTruth {
    uint32_t radius = 0;
    std::vector<TruthEntry> entries; // sorted by (query, point)
};

GroundTruth scan_truth(const Dataset& data, const Dataset& queries, uint32_t radius);

/// CSV with a "# radius=R" comment, then query_id,point_id,distance rows.
void save_truth(const GroundTruth& truth, const std::string& path);
GroundTruth load_truth(const std::string& path);

/// entries regrouped per query id.
std::vector<std::vector<TruthEntry>> group_by_query(const GroundTruth& truth, size_t query_count);

/// counts[D] = number of (query, data point) pairs at distance D. With
/// sample_per_query > 0 only that many random points are paired per query.
std::vector<uint64_t> distance_histogram(const Dataset& data, const Dataset& queries,
                                         size_t sample_per_query, uint64_t seed);

using RealMatrix = std::vector<std::vector<double>>;

/// Whitespace- or comma-separated floats, one vector per line.
RealMatrix load_real_matrix(const std::string& path);

/// Random gaussian directions, one per output bit.
RealMatrix random_hyperplanes(size_t bits, size_t dim, Rng& rng);

/// Sign-of-projection sketch: output bit j of a row is 1 iff its dot
/// product with planes[j] is nonnegative.
Dataset binarize(const RealMatrix& rows, const RealMatrix& planes);
Dataset binarize(const RealMatrix& rows, size_t bits, uint64_t seed);

} // namespace fclsh
