#pragma once

#include "fclsh/index.hpp"
#include "fclsh/mih.hpp"
#include "fclsh/workload.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fclsh {

/// One measured search method over one workload.
///
/// method names: fclsh (covering family, batch hashing), bclsh (same
/// family, per-mask hashing), classic (bit sampling), mih (multi-index
/// hashing), linear (scan everything).
struct ExperimentConfig {
    std::string method = "fclsh";
    uint32_t radius = 0;
    double c = 1.0;
    double delta = 0.1;
    std::optional<PlanOverride> plan_override;
    std::optional<uint32_t> k_override;
    std::optional<size_t> tables_override;
    std::optional<uint32_t> mih_parts;
    uint64_t seed = 0;
    uint32_t repeats = 5;
    /// Redraw every random structure per repeat (default), or rebuild from
    /// the same seed each time so repeats only average the clock.
    bool fresh_seeds = true;
    bool include_zero_column = false;
    uint64_t prime = kMersenne61;
    size_t table_budget = kDefaultTableBudget;
    uint64_t ball_budget = kDefaultBallBudget;
};

/// Per-query metrics, averaged over the repeats. Counters are means and so
/// fractional in general; stage times are microseconds.
struct MetricsRow {
    uint32_t query_id = 0;
    std::string method;
    uint32_t radius = 0;
    double collisions = 0.0;
    double candidates = 0.0;
    double found = 0.0;
    double true_near = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double time_s1_us = 0.0;
    double time_s2_us = 0.0;
    double time_s3_us = 0.0;

    bool operator==(const MetricsRow&) const = default;
};

/// Runs the configured method over every query, repeats times, against the
/// given ground truth (whose radius must cover the config radius).
std::vector<MetricsRow> run_experiment(const Dataset& data, const Dataset& queries,
                                       const GroundTruth& truth, const ExperimentConfig& cfg);

void write_metrics(std::span<const MetricsRow> rows, std::ostream& out);
std::vector<MetricsRow> read_metrics(std::istream& in);

/// Head-to-head timing of the two covering hash code paths on random
/// queries, one row per (dims, radius) cell. values_match reports whether
/// every query hashed identically through both paths.
struct HashTimingRow {
    size_t dims = 0;
    uint32_t radius = 0;
    size_t tables = 0;
    double batch_us = 0.0;
    double reference_us = 0.0;
    double speedup = 0.0;
    bool values_match = true;
};

std::vector<HashTimingRow> time_hash_paths(std::span<const size_t> dims_list,
                                           std::span<const uint32_t> radius_list,
                                           size_t queries, uint64_t seed);

void write_hash_timings(std::span<const HashTimingRow> rows, std::ostream& out);

} // namespace fclsh
