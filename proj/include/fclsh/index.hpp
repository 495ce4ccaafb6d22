#pragma once

#include "fclsh/classic.hpp"
#include "fclsh/covering.hpp"
#include "fclsh/dataset.hpp"
#include "fclsh/posting.hpp"
#include "fclsh/report.hpp"
#include "fclsh/transform.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace fclsh {

/// Which hash family backs the tables, and for covering families which of
/// the two equal-valued hashing code paths the query stage times:
/// covering_batch uses the scatter + fast transform kernel, while
/// covering_reference evaluates every mask directly. Bucket contents are
/// identical; only stage 1 cost differs.
enum class Method { covering_batch, covering_reference, classic };

struct IndexOptions {
    uint64_t prime = kMersenne61;
    bool include_zero_column = false;
    /// Classic tuning: target false negative ratio, optional pinned k, and
    /// an optional table count (defaults to 2^(r+1)-1 to mirror a covering
    /// family of the same radius).
    double delta = 0.1;
    std::optional<uint32_t> k_override;
    std::optional<size_t> tables_override;
    size_t table_budget = kDefaultTableBudget;
};

struct PartIndex {
    std::variant<CoveringFamily, BitSampleFamily> family;
    std::vector<PostingTable> tables;
};

/// Posting tables for one dataset under one preprocessing plan: one group
/// of tables per plan part, each table keyed by one hash value.
struct IndexSet {
    const Dataset* data = nullptr;
    Method method = Method::covering_batch;
    uint32_t radius = 0;
    PreprocessPlan plan;
    std::vector<PartIndex> parts;

    size_t table_count() const;
    size_t entry_count() const;
};

/// Reusable per-caller query state: hash buffers plus the epoch-stamped
/// dedup array that keeps repeat candidates from being verified twice.
struct QueryScratch {
    std::vector<uint64_t> values;
    std::vector<uint64_t> sketch;
    std::vector<uint32_t> stamp;
    uint32_t epoch = 0;
    std::vector<uint32_t> candidates;

    void begin(size_t n);
    bool mark(uint32_t id); // true the first time an id appears this query
};

/// Covering methods derive each part's family from the plan (radius
/// per_part_radius, construction picked by part width). The classic method
/// requires the identity plan; the baseline never reshapes its input.
IndexSet build_index(const Dataset& data, Method method, uint32_t radius,
                     const PreprocessPlan& plan, Rng& rng, const IndexOptions& opt = {});

struct RnnResult {
    std::vector<uint32_t> ids; // found points within radius, ascending
    QueryReport report;
};

/// Exhaustive bucket strategy: verify every distinct candidate. For
/// covering methods and radius <= the plan radius the result set equals a
/// linear scan's.
RnnResult query_r_nn(const IndexSet& index, const BitVector& q, uint32_t radius,
                     QueryScratch& scratch);

struct CrnnResult {
    std::optional<uint32_t> id; // best candidate seen, ties to the lowest id
    uint32_t distance = 0;
    QueryReport report;
};

/// Budgeted strategy: walk buckets in table order, stop after 3L postings
/// (duplicates included), return the closest point retrieved.
CrnnResult query_c_r_nn(const IndexSet& index, const BitVector& q, uint32_t radius,
                        QueryScratch& scratch, std::optional<uint64_t> posting_budget = std::nullopt);

} // namespace fclsh
