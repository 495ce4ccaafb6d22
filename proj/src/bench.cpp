#include "fclsh/bench.hpp"

#include "fclsh/errors.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace fclsh {

namespace {

using Clock = std::chrono::steady_clock;

Method method_from_name(const std::string& name) {
    if (name == "fclsh") return Method::covering_batch;
    if (name == "bclsh") return Method::covering_reference;
    if (name == "classic") return Method::classic;
    throw UsageError("unknown method '" + name + "'");
}

bool uses_index(const std::string& name) {
    return name == "fclsh" || name == "bclsh" || name == "classic";
}

struct RunAccumulator {
    double collisions = 0, candidates = 0, found = 0, precision = 0, recall = 0;
    double s1 = 0, s2 = 0, s3 = 0;
};

size_t count_true_hits(const std::vector<uint32_t>& found_ids,
                       const std::vector<uint32_t>& true_ids) {
    size_t hits = 0;
    auto it = true_ids.begin();
    for (uint32_t id : found_ids) {
        it = std::lower_bound(it, true_ids.end(), id);
        if (it == true_ids.end()) break;
        if (*it == id) ++hits;
    }
    return hits;
}

void accumulate(RunAccumulator& acc, const QueryReport& report,
                const std::vector<uint32_t>& found_ids, const std::vector<uint32_t>& true_ids) {
    size_t hits = count_true_hits(found_ids, true_ids);
    acc.collisions += static_cast<double>(report.collisions);
    acc.candidates += static_cast<double>(report.candidates);
    acc.found += static_cast<double>(report.found);
    acc.precision += report.candidates == 0
                         ? 1.0
                         : static_cast<double>(hits) / static_cast<double>(report.candidates);
    acc.recall += true_ids.empty() ? 1.0
                                   : static_cast<double>(hits) / static_cast<double>(true_ids.size());
    acc.s1 += report.time_s1;
    acc.s2 += report.time_s2;
    acc.s3 += report.time_s3;
}

} // namespace

std::vector<MetricsRow> run_experiment(const Dataset& data, const Dataset& queries,
                                       const GroundTruth& truth, const ExperimentConfig& cfg) {
    if (data.size() == 0) throw UsageError("experiment: empty dataset");
    if (queries.size() == 0) throw UsageError("experiment: no queries");
    if (data.dims != queries.dims) throw UsageError("experiment: data and query widths differ");
    if (cfg.repeats == 0) throw UsageError("experiment: repeats must be >= 1");
    if (truth.radius < cfg.radius)
        throw DataError("experiment: ground truth radius " + std::to_string(truth.radius) +
                        " is below the query radius " + std::to_string(cfg.radius));

    // truth ids within the query radius, sorted, per query
    std::vector<std::vector<uint32_t>> true_ids(queries.size());
    {
        auto grouped = group_by_query(truth, queries.size());
        for (size_t qi = 0; qi < queries.size(); ++qi) {
            for (const TruthEntry& e : grouped[qi])
                if (e.distance <= cfg.radius) true_ids[qi].push_back(e.point);
            std::sort(true_ids[qi].begin(), true_ids[qi].end());
        }
    }

    std::vector<RunAccumulator> acc(queries.size());
    Rng root(cfg.seed);

    for (uint32_t run = 0; run < cfg.repeats; ++run) {
        Rng run_rng = cfg.fresh_seeds ? root.stream("run", run) : root.stream("run", 0);

        if (cfg.method == "linear") {
            for (size_t qi = 0; qi < queries.size(); ++qi) {
                QueryReport report;
                std::vector<uint32_t> found_ids;
                auto t0 = Clock::now();
                for (size_t pi = 0; pi < data.size(); ++pi)
                    if (hamming_distance(data[pi], queries[qi]) <= cfg.radius)
                        found_ids.push_back(static_cast<uint32_t>(pi));
                report.time_s3 = std::chrono::duration<double>(Clock::now() - t0).count();
                report.collisions = data.size();
                report.candidates = data.size();
                report.found = found_ids.size();
                accumulate(acc[qi], report, found_ids, true_ids[qi]);
            }
        } else if (cfg.method == "mih") {
            uint32_t parts = cfg.mih_parts ? *cfg.mih_parts
                                           : default_mih_parts(data.dims, data.size());
            MihIndex index = build_mih(data, parts);
            for (size_t qi = 0; qi < queries.size(); ++qi) {
                MihQueryResult res = query_mih(index, queries[qi], cfg.radius, cfg.ball_budget);
                accumulate(acc[qi], res.report, res.found, true_ids[qi]);
            }
        } else if (uses_index(cfg.method)) {
            Method method = method_from_name(cfg.method);
            Rng plan_rng = run_rng.stream("plan");
            PreprocessPlan plan;
            IndexOptions opt;
            opt.prime = cfg.prime;
            opt.include_zero_column = cfg.include_zero_column;
            opt.table_budget = cfg.table_budget;
            if (method == Method::classic) {
                plan = make_plan(data.dims, cfg.radius, cfg.c, data.size(), plan_rng,
                                 PlanOverride{PlanKind::identity, 1}, cfg.table_budget);
                opt.delta = cfg.delta;
                opt.k_override = cfg.k_override;
                if (cfg.tables_override) {
                    opt.tables_override = cfg.tables_override;
                } else {
                    // mirror the covering family's total table count under
                    // the same plan flags
                    Rng probe_rng = run_rng.stream("plan-probe");
                    PreprocessPlan covering_plan =
                        make_plan(data.dims, cfg.radius, cfg.c, data.size(), probe_rng,
                                  cfg.plan_override, cfg.table_budget);
                    opt.tables_override = plan_table_count(covering_plan);
                }
            } else {
                plan = make_plan(data.dims, cfg.radius, cfg.c, data.size(), plan_rng,
                                 cfg.plan_override, cfg.table_budget);
            }
            Rng build_rng = run_rng.stream("index");
            IndexSet index = build_index(data, method, cfg.radius, plan, build_rng, opt);
            QueryScratch scratch;
            for (size_t qi = 0; qi < queries.size(); ++qi) {
                RnnResult res = query_r_nn(index, queries[qi], cfg.radius, scratch);
                accumulate(acc[qi], res.report, res.ids, true_ids[qi]);
            }
        } else {
            throw UsageError("unknown method '" + cfg.method + "'");
        }
    }

    std::vector<MetricsRow> rows(queries.size());
    double inv = 1.0 / static_cast<double>(cfg.repeats);
    for (size_t qi = 0; qi < queries.size(); ++qi) {
        MetricsRow& row = rows[qi];
        row.query_id = static_cast<uint32_t>(qi);
        row.method = cfg.method;
        row.radius = cfg.radius;
        row.collisions = acc[qi].collisions * inv;
        row.candidates = acc[qi].candidates * inv;
        row.found = acc[qi].found * inv;
        row.true_near = static_cast<double>(true_ids[qi].size());
        row.precision = acc[qi].precision * inv;
        row.recall = acc[qi].recall * inv;
        row.time_s1_us = acc[qi].s1 * inv * 1e6;
        row.time_s2_us = acc[qi].s2 * inv * 1e6;
        row.time_s3_us = acc[qi].s3 * inv * 1e6;
    }
    return rows;
}

void write_metrics(std::span<const MetricsRow> rows, std::ostream& out) {
    out << "query_id,method,r,collisions,candidates,found,true_near,precision,recall,"
           "time_s1_us,time_s2_us,time_s3_us\n";
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const MetricsRow& r : rows) {
        out << r.query_id << ',' << r.method << ',' << r.radius << ',' << r.collisions << ','
            << r.candidates << ',' << r.found << ',' << r.true_near << ',' << r.precision << ','
            << r.recall << ',' << r.time_s1_us << ',' << r.time_s2_us << ',' << r.time_s3_us
            << "\n";
    }
}

std::vector<MetricsRow> read_metrics(std::istream& in) {
    std::vector<MetricsRow> rows;
    std::string line;
    bool have_header = false;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!have_header) {
            have_header = true;
            continue;
        }
        std::vector<std::string> fields;
        std::string field;
        std::istringstream split(line);
        while (std::getline(split, field, ',')) fields.push_back(field);
        if (fields.size() != 12)
            throw DataError("metrics: line " + std::to_string(lineno) + " has " +
                            std::to_string(fields.size()) + " fields, expected 12");
        try {
            MetricsRow r;
            r.query_id = static_cast<uint32_t>(std::stoul(fields[0]));
            r.method = fields[1];
            r.radius = static_cast<uint32_t>(std::stoul(fields[2]));
            r.collisions = std::stod(fields[3]);
            r.candidates = std::stod(fields[4]);
            r.found = std::stod(fields[5]);
            r.true_near = std::stod(fields[6]);
            r.precision = std::stod(fields[7]);
            r.recall = std::stod(fields[8]);
            r.time_s1_us = std::stod(fields[9]);
            r.time_s2_us = std::stod(fields[10]);
            r.time_s3_us = std::stod(fields[11]);
            rows.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw DataError("metrics: unparsable number on line " + std::to_string(lineno));
        }
    }
    return rows;
}

std::vector<HashTimingRow> time_hash_paths(std::span<const size_t> dims_list,
                                           std::span<const uint32_t> radius_list,
                                           size_t queries, uint64_t seed) {
    if (queries == 0) throw UsageError("bench: need at least one query");
    std::vector<HashTimingRow> rows;
    Rng root(seed);
    for (size_t dims : dims_list) {
        for (uint32_t radius : radius_list) {
            Rng cell_rng = root.stream("cell", (uint64_t(dims) << 8) | radius);
            CoveringFamily family = build_covering_family(dims, radius, cell_rng);

            std::vector<BitVector> qs;
            qs.reserve(queries);
            Rng query_rng = cell_rng.stream("queries");
            for (size_t i = 0; i < queries; ++i)
                qs.push_back(BitVector::random(dims, query_rng));

            HashTimingRow row;
            row.dims = dims;
            row.radius = radius;
            row.tables = family.table_count();

            std::vector<uint64_t> batch(family.table_count());
            std::vector<uint64_t> reference(family.table_count());
            std::vector<uint64_t> sketch;

            hash_batch_into(family, qs[0], batch, sketch); // warm
            auto t0 = Clock::now();
            for (const BitVector& q : qs) hash_batch_into(family, q, batch, sketch);
            row.batch_us =
                std::chrono::duration<double>(Clock::now() - t0).count() * 1e6 / queries;

            hash_reference_into(family, qs[0], reference);
            t0 = Clock::now();
            for (const BitVector& q : qs) hash_reference_into(family, q, reference);
            row.reference_us =
                std::chrono::duration<double>(Clock::now() - t0).count() * 1e6 / queries;

            for (const BitVector& q : qs) {
                hash_batch_into(family, q, batch, sketch);
                hash_reference_into(family, q, reference);
                if (batch != reference) row.values_match = false;
            }
            row.speedup = row.reference_us / row.batch_us;
            rows.push_back(row);
        }
    }
    return rows;
}

void write_hash_timings(std::span<const HashTimingRow> rows, std::ostream& out) {
    out << "d,r,tables,batch_us,reference_us,speedup,values_match\n";
    out << std::setprecision(6);
    for (const HashTimingRow& r : rows)
        out << r.dims << ',' << r.radius << ',' << r.tables << ',' << r.batch_us << ','
            << r.reference_us << ',' << r.speedup << ',' << (r.values_match ? 1 : 0) << "\n";
}

} // namespace fclsh
