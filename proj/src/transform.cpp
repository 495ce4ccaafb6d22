#include "fclsh/transform.hpp"

#include "fclsh/covering.hpp"
#include "fclsh/errors.hpp"

#include <cmath>
#include <numeric>

namespace fclsh {

size_t PreprocessPlan::part_dims(size_t p) const {
    if (kind == PlanKind::partition) return parts[p].second - parts[p].first;
    return output_dims();
}

namespace {

size_t tables_for_radius(uint32_t radius) { return (size_t(1) << (radius + 1)) - 1; }

PreprocessPlan identity_plan(size_t dims, uint32_t radius) {
    PreprocessPlan plan;
    plan.kind = PlanKind::identity;
    plan.dims = dims;
    plan.radius = radius;
    plan.t = 1;
    plan.per_part_radius = radius;
    return plan;
}

} // namespace

PreprocessPlan make_plan(size_t dims, uint32_t radius, double c, size_t n, Rng& rng,
                         std::optional<PlanOverride> force, size_t table_budget) {
    if (dims == 0) throw UsageError("plan: dims must be positive");
    if (radius == 0) throw UsageError("plan: radius must be >= 1");
    if (radius >= dims) throw UsageError("plan: radius must be below dims");
    if (c < 1.0) throw UsageError("plan: approximation factor must be >= 1");
    if (n < 2) throw UsageError("plan: need at least two data points");

    PlanKind kind;
    uint32_t t;
    double logn = std::log2(static_cast<double>(n));
    double cr = c * static_cast<double>(radius);
    if (force) {
        if (force->t == 0) throw UsageError("plan: override factor must be >= 1");
        if (force->kind == PlanKind::identity && force->t != 1)
            throw UsageError("plan: identity override must have t = 1");
        kind = force->kind;
        t = force->t;
    } else if (cr < logn - 1e-9) {
        kind = PlanKind::replicate;
        t = static_cast<uint32_t>(std::floor(logn / cr + 1e-9));
    } else if (cr > logn + 1e-9) {
        kind = PlanKind::partition;
        t = static_cast<uint32_t>(std::ceil(cr / logn - 1e-9));
    } else {
        kind = PlanKind::identity;
        t = 1;
    }
    if (t <= 1) kind = PlanKind::identity;

    if (kind == PlanKind::identity) {
        if (radius > kMaxCoveringRadius || tables_for_radius(radius) > table_budget)
            throw ResourceError("plan: radius " + std::to_string(radius) +
                                " needs more tables than the budget allows");
        return identity_plan(dims, radius);
    }

    if (kind == PlanKind::replicate) {
        while (t > 1 && (uint64_t(t) * radius > kMaxCoveringRadius ||
                         tables_for_radius(t * radius) > table_budget))
            --t;
        if (t == 1) return identity_plan(dims, radius);
        PreprocessPlan plan;
        plan.kind = PlanKind::replicate;
        plan.dims = dims;
        plan.radius = radius;
        plan.t = t;
        plan.per_part_radius = t * radius;
        return plan;
    }

    // partition
    if (t > radius)
        throw UsageError("plan: cannot cut radius " + std::to_string(radius) + " into " +
                         std::to_string(t) + " parts");
    if (t > dims) throw UsageError("plan: more parts than dimensions");
    uint32_t part_radius = radius / t;
    if (part_radius > kMaxCoveringRadius ||
        size_t(t) * tables_for_radius(part_radius) > table_budget)
        throw ResourceError("plan: partition table count exceeds the budget");

    PreprocessPlan plan;
    plan.kind = PlanKind::partition;
    plan.dims = dims;
    plan.radius = radius;
    plan.t = t;
    plan.per_part_radius = part_radius;
    plan.permutation.resize(dims);
    std::iota(plan.permutation.begin(), plan.permutation.end(), 0u);
    Rng perm_rng = rng.stream("plan-permutation");
    perm_rng.shuffle(plan.permutation);
    // widths differ by at most one; the wider parts sit at the tail
    size_t base = dims / t;
    size_t rem = dims % t;
    size_t begin = 0;
    for (uint32_t p = 0; p < t; ++p) {
        size_t width = base + (p >= t - rem ? 1 : 0);
        plan.parts.emplace_back(begin, begin + width);
        begin += width;
    }
    return plan;
}

BitVector replicate_vector(const BitVector& v, uint32_t t) {
    if (t == 0) throw UsageError("replicate: factor must be >= 1");
    BitVector out(v.dims() * t);
    for (uint32_t k = 0; k < t; ++k)
        for_each_set_bit(v, [&](size_t i) { out.set(k * v.dims() + i, true); });
    return out;
}

std::vector<BitVector> split_vector(const PreprocessPlan& plan, const BitVector& v) {
    if (plan.kind != PlanKind::partition) throw UsageError("split: plan does not partition");
    if (v.dims() != plan.dims) throw UsageError("split: vector width does not match the plan");
    std::vector<BitVector> out;
    out.reserve(plan.t);
    for (const auto& [begin, end] : plan.parts) {
        BitVector piece(end - begin);
        for (size_t j = begin; j < end; ++j)
            if (v.get(plan.permutation[j])) piece.set(j - begin, true);
        out.push_back(std::move(piece));
    }
    return out;
}

std::vector<BitVector> apply_plan(const PreprocessPlan& plan, const BitVector& v) {
    if (v.dims() != plan.dims) throw UsageError("plan: vector width does not match");
    switch (plan.kind) {
    case PlanKind::identity: {
        std::vector<BitVector> out;
        out.push_back(v);
        return out;
    }
    case PlanKind::replicate: {
        std::vector<BitVector> out;
        out.push_back(replicate_vector(v, plan.t));
        return out;
    }
    case PlanKind::partition:
        return split_vector(plan, v);
    }
    throw UsageError("plan: unknown kind");
}

size_t plan_table_count(const PreprocessPlan& plan) {
    return plan.part_count() * tables_for_radius(plan.per_part_radius);
}

} // namespace fclsh
