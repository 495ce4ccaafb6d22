#pragma once

#include "fclsh/bitvec.hpp"
#include "fclsh/rng.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace fclsh {

/// How queries and data are reshaped before covering families see them.
///
/// replicate: concatenate t copies of the vector, scaling every distance by
///            t, and search the t*d-wide space at radius t*r. Chosen when
///            c*r < log2(n); raising the effective radius brings the family
///            closer to the regime its table count was designed for.
/// partition: permute coordinates once, cut into t contiguous parts of
///            near-equal width, and search each part at radius floor(r/t).
///            Any pair within distance r differs in at most r positions, so
///            some part sees at most floor(r/t) of them. Chosen when
///            c*r > log2(n) to keep table counts down.
enum class PlanKind { identity, replicate, partition };

struct PreprocessPlan {
    PlanKind kind = PlanKind::identity;
    size_t dims = 0;
    uint32_t radius = 0;
    uint32_t t = 1;
    /// Radius each per-part covering family is built for: r for identity,
    /// t*r for replicate, floor(r/t) for partition.
    uint32_t per_part_radius = 0;
    /// Partition only: output position j reads input bit permutation[j].
    std::vector<uint32_t> permutation;
    /// Partition only: [begin, end) ranges over the permuted string.
    std::vector<std::pair<size_t, size_t>> parts;

    size_t part_count() const { return kind == PlanKind::partition ? t : 1; }
    size_t part_dims(size_t p) const;
    size_t output_dims() const { return kind == PlanKind::replicate ? dims * t : dims; }
};

/// Force a branch instead of deriving one from c*r vs log2(n). Used to pin
/// experiment grids; t = 1 collapses any kind to identity.
struct PlanOverride {
    PlanKind kind = PlanKind::identity;
    uint32_t t = 1;
};

/// Cap on the summed table count of a plan.
inline constexpr size_t kDefaultTableBudget = size_t(1) << 21;

/// Derive the preprocessing for an (n, d, r, c) instance. Without an
/// override the branch follows the c*r vs log2(n) comparison; a replication
/// factor that would blow the table budget is walked down toward identity.
PreprocessPlan make_plan(size_t dims, uint32_t radius, double c, size_t n, Rng& rng,
                         std::optional<PlanOverride> force = std::nullopt,
                         size_t table_budget = kDefaultTableBudget);

/// t copies of v back to back.
BitVector replicate_vector(const BitVector& v, uint32_t t);

/// The partition pieces of v under the plan's permutation.
std::vector<BitVector> split_vector(const PreprocessPlan& plan, const BitVector& v);

/// The per-part views any plan produces: one vector for identity and
/// replicate, t vectors for partition.
std::vector<BitVector> apply_plan(const PreprocessPlan& plan, const BitVector& v);

/// Summed covering table count across parts: parts * (2^(r'+1) - 1).
size_t plan_table_count(const PreprocessPlan& plan);

} // namespace fclsh
