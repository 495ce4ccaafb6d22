#include "fclsh/index.hpp"

#include "fclsh/errors.hpp"

#include <algorithm>
#include <chrono>

namespace fclsh {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

} // namespace

size_t IndexSet::table_count() const {
    size_t total = 0;
    for (const auto& p : parts) total += p.tables.size();
    return total;
}

size_t IndexSet::entry_count() const {
    size_t total = 0;
    for (const auto& p : parts)
        for (const auto& t : p.tables) total += t.entry_count();
    return total;
}

void QueryScratch::begin(size_t n) {
    if (stamp.size() < n) stamp.resize(n, 0);
    ++epoch;
    if (epoch == 0) { // stamp wrap, restart the numbering
        std::fill(stamp.begin(), stamp.end(), 0);
        epoch = 1;
    }
    candidates.clear();
}

bool QueryScratch::mark(uint32_t id) {
    if (stamp[id] == epoch) return false;
    stamp[id] = epoch;
    return true;
}

IndexSet build_index(const Dataset& data, Method method, uint32_t radius,
                     const PreprocessPlan& plan, Rng& rng, const IndexOptions& opt) {
    if (data.size() == 0) throw UsageError("index: empty dataset");
    if (data.dims != plan.dims) throw UsageError("index: dataset width does not match the plan");
    if (radius != plan.radius) throw UsageError("index: radius does not match the plan");

    IndexSet index;
    index.data = &data;
    index.method = method;
    index.radius = radius;
    index.plan = plan;

    size_t n = data.size();
    size_t part_count = plan.part_count();
    index.parts.resize(part_count);

    if (method == Method::classic) {
        if (plan.kind != PlanKind::identity)
            throw UsageError("index: the classic baseline expects the identity plan");
        size_t tables = opt.tables_override.value_or((size_t(1) << (radius + 1)) - 1);
        if (tables > opt.table_budget)
            throw ResourceError("index: table count exceeds the budget");
        uint32_t k = opt.k_override
                         ? *opt.k_override
                         : choose_k(data.dims, radius, tables, opt.delta);
        Rng family_rng = rng.stream("family", 0);
        index.parts[0].family =
            build_bit_sample_family(data.dims, k, tables, family_rng, opt.prime);
    } else {
        if (plan_table_count(plan) > opt.table_budget)
            throw ResourceError("index: table count exceeds the budget");
        CoveringOptions copt;
        copt.prime = opt.prime;
        copt.include_zero_column = opt.include_zero_column;
        for (size_t p = 0; p < part_count; ++p) {
            size_t pd = plan.part_dims(p);
            Rng family_rng = rng.stream("family", p);
            index.parts[p].family =
                build_covering_family(pd, plan.per_part_radius, family_rng, copt);
        }
    }

    for (size_t p = 0; p < part_count; ++p) {
        size_t tables = std::visit([](const auto& f) { return f.table_count(); },
                                   index.parts[p].family);
        index.parts[p].tables.resize(tables);
        for (auto& t : index.parts[p].tables) t.reserve(n);
    }

    // Builds always hash through the batch kernel; the reference path exists
    // to be timed at query time and produces the same values.
    std::vector<uint64_t> values;
    std::vector<uint64_t> sketch;
    for (size_t id = 0; id < n; ++id) {
        std::vector<BitVector> views = apply_plan(plan, data[id]);
        for (size_t p = 0; p < part_count; ++p) {
            auto& part = index.parts[p];
            values.resize(part.tables.size());
            if (const auto* cf = std::get_if<CoveringFamily>(&part.family)) {
                hash_batch_into(*cf, views[p], values, sketch);
            } else {
                hash_tables_into(std::get<BitSampleFamily>(part.family), views[p], values);
            }
            for (size_t v = 0; v < values.size(); ++v)
                part.tables[v].add(values[v], static_cast<uint32_t>(id));
        }
    }
    for (auto& part : index.parts)
        for (auto& t : part.tables) t.finalize();
    return index;
}

namespace {

// Stage 1 for one query: hash every part's view into scratch.values,
// concatenated part by part. Returns per-part offsets.
std::vector<size_t> hash_stage(const IndexSet& index, const BitVector& q, QueryScratch& scratch) {
    std::vector<BitVector> views = apply_plan(index.plan, q);
    scratch.values.resize(index.table_count());
    std::vector<size_t> offsets(index.parts.size());
    size_t at = 0;
    for (size_t p = 0; p < index.parts.size(); ++p) {
        offsets[p] = at;
        const auto& part = index.parts[p];
        std::span<uint64_t> out(scratch.values.data() + at, part.tables.size());
        if (const auto* cf = std::get_if<CoveringFamily>(&part.family)) {
            if (index.method == Method::covering_reference)
                hash_reference_into(*cf, views[p], out);
            else
                hash_batch_into(*cf, views[p], out, scratch.sketch);
        } else {
            hash_tables_into(std::get<BitSampleFamily>(part.family), views[p], out);
        }
        at += part.tables.size();
    }
    return offsets;
}

void check_query(const IndexSet& index, const BitVector& q, uint32_t radius) {
    if (index.data == nullptr) throw UsageError("index: not built");
    if (q.dims() != index.plan.dims) throw UsageError("query width does not match the index");
    if (radius > index.radius)
        throw UsageError("query radius " + std::to_string(radius) +
                         " exceeds the index radius " + std::to_string(index.radius));
}

} // namespace

RnnResult query_r_nn(const IndexSet& index, const BitVector& q, uint32_t radius,
                     QueryScratch& scratch) {
    check_query(index, q, radius);
    const Dataset& data = *index.data;
    scratch.begin(data.size());

    RnnResult res;
    auto t0 = Clock::now();
    std::vector<size_t> offsets = hash_stage(index, q, scratch);
    res.report.time_s1 = seconds_since(t0);

    t0 = Clock::now();
    for (size_t p = 0; p < index.parts.size(); ++p) {
        const auto& tables = index.parts[p].tables;
        for (size_t v = 0; v < tables.size(); ++v) {
            for (const auto& entry : tables[v].bucket(scratch.values[offsets[p] + v])) {
                ++res.report.collisions;
                if (scratch.mark(entry.id)) scratch.candidates.push_back(entry.id);
            }
        }
    }
    res.report.candidates = scratch.candidates.size();
    res.report.time_s2 = seconds_since(t0);

    t0 = Clock::now();
    for (uint32_t id : scratch.candidates)
        if (hamming_distance(data[id], q) <= radius) res.ids.push_back(id);
    std::sort(res.ids.begin(), res.ids.end());
    res.report.found = res.ids.size();
    res.report.time_s3 = seconds_since(t0);
    return res;
}

CrnnResult query_c_r_nn(const IndexSet& index, const BitVector& q, uint32_t radius,
                        QueryScratch& scratch, std::optional<uint64_t> posting_budget) {
    check_query(index, q, radius);
    const Dataset& data = *index.data;
    scratch.begin(data.size());

    CrnnResult res;
    auto t0 = Clock::now();
    std::vector<size_t> offsets = hash_stage(index, q, scratch);
    res.report.time_s1 = seconds_since(t0);

    uint64_t budget = posting_budget.value_or(3 * static_cast<uint64_t>(index.table_count()));
    uint64_t best_distance = UINT64_MAX;
    uint32_t best_id = 0;

    t0 = Clock::now();
    bool stopped = false;
    for (size_t p = 0; p < index.parts.size() && !stopped; ++p) {
        const auto& tables = index.parts[p].tables;
        for (size_t v = 0; v < tables.size() && !stopped; ++v) {
            for (const auto& entry : tables[v].bucket(scratch.values[offsets[p] + v])) {
                if (res.report.collisions == budget) {
                    stopped = true;
                    break;
                }
                ++res.report.collisions;
                if (scratch.mark(entry.id)) {
                    ++res.report.candidates;
                    uint64_t dist = hamming_distance(data[entry.id], q);
                    if (dist <= radius) ++res.report.found;
                    if (dist < best_distance || (dist == best_distance && entry.id < best_id)) {
                        best_distance = dist;
                        best_id = entry.id;
                    }
                }
            }
        }
    }
    res.report.time_s2 = seconds_since(t0);

    if (best_distance != UINT64_MAX) {
        res.id = best_id;
        res.distance = static_cast<uint32_t>(best_distance);
    }
    return res;
}

} // namespace fclsh
