#include "fclsh/bench.hpp"
#include "fclsh/dataset.hpp"
#include "fclsh/errors.hpp"
#include "fclsh/index.hpp"
#include "fclsh/mih.hpp"
#include "fclsh/workload.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace fclsh;

std::vector<PlantSpec> parse_plants(const std::vector<std::string>& specs) {
    std::vector<PlantSpec> out;
    for (const std::string& s : specs) {
        auto colon = s.find(':');
        if (colon == std::string::npos)
            throw UsageError("--plant expects DISTANCE:COUNT, got '" + s + "'");
        try {
            PlantSpec p;
            p.distance = static_cast<uint32_t>(std::stoul(s.substr(0, colon)));
            p.count = static_cast<uint32_t>(std::stoul(s.substr(colon + 1)));
            out.push_back(p);
        } catch (const std::logic_error&) {
            throw UsageError("--plant expects DISTANCE:COUNT, got '" + s + "'");
        }
    }
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot open '" + path + "' for writing");
    return out;
}

struct MethodFlags {
    std::string method = "fclsh";
    uint32_t radius = 1;
    double c = 1.0;
    double delta = 0.1;
    uint32_t parts = 0;     // partition override
    uint32_t replicate = 0; // replication override
    uint64_t tables = 0;    // classic table override
    uint32_t k = 0;         // classic k override
    uint32_t mih_parts = 0;
    bool include_zero_column = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--method", method, "fclsh, bclsh, classic, mih or linear")
            ->check(CLI::IsMember({"fclsh", "bclsh", "classic", "mih", "linear"}));
        cmd->add_option("--r", radius, "search radius")->required();
        cmd->add_option("--c", c, "approximation factor used by the planner");
        cmd->add_option("--delta", delta, "classic: target false negative ratio");
        cmd->add_option("--parts", parts, "force partitioning into this many parts");
        cmd->add_option("--replicate", replicate, "force this replication factor");
        cmd->add_option("--tables", tables, "classic: table count override");
        cmd->add_option("--k", k, "classic: bits per table override");
        cmd->add_option("--mih-parts", mih_parts, "mih: substring count override");
        cmd->add_flag("--include-zero-column", include_zero_column,
                      "let the general mapping draw the all-zero code column");
    }

    void fill(ExperimentConfig& cfg) const {
        if (parts != 0 && replicate != 0)
            throw UsageError("--parts and --replicate are mutually exclusive");
        cfg.method = method;
        cfg.radius = radius;
        cfg.c = c;
        cfg.delta = delta;
        if (parts != 0) cfg.plan_override = PlanOverride{PlanKind::partition, parts};
        if (replicate != 0) cfg.plan_override = PlanOverride{PlanKind::replicate, replicate};
        if (tables != 0) cfg.tables_override = tables;
        if (k != 0) cfg.k_override = k;
        if (mih_parts != 0) cfg.mih_parts = mih_parts;
        cfg.include_zero_column = include_zero_column;
    }
};

int run(int argc, char** argv) {
    CLI::App app{"Hamming-space similarity search with covering LSH families"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic workload");
    size_t gen_n = 0, gen_d = 0, gen_queries = 0;
    uint64_t gen_seed = 0;
    bool gen_text = false;
    std::vector<std::string> gen_plants;
    std::string gen_data_out, gen_queries_out;
    gen->add_option("--n", gen_n, "data points")->required();
    gen->add_option("--d", gen_d, "dimensions")->required();
    gen->add_option("--queries", gen_queries, "query count")->required();
    gen->add_option("--plant", gen_plants,
                    "DISTANCE:COUNT planted neighbors per query (repeatable)");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--data-out", gen_data_out, "dataset output path")->required();
    gen->add_option("--queries-out", gen_queries_out, "query output path")->required();
    gen->add_flag("--text", gen_text, "write text instead of the binary container");

    // binarize
    auto* binz = app.add_subcommand("binarize", "sketch real vectors into binary codes");
    std::string binz_in, binz_out;
    size_t binz_bits = 0;
    uint64_t binz_seed = 0;
    binz->add_option("--in", binz_in, "real-valued matrix, one vector per line")->required();
    binz->add_option("--bits", binz_bits, "output code width")->required();
    binz->add_option("--seed", binz_seed, "random seed");
    binz->add_option("--out", binz_out, "dataset output path")->required();

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact ground truth by linear scan");
    std::string oracle_data, oracle_queries, oracle_out;
    uint32_t oracle_r = 0;
    oracle->add_option("--data,--in", oracle_data, "dataset path")->required();
    oracle->add_option("--queries", oracle_queries, "query path")->required();
    oracle->add_option("--r", oracle_r, "truth radius")->required();
    oracle->add_option("--out", oracle_out, "truth CSV output path")->required();

    // hist
    auto* hist = app.add_subcommand("hist", "query-to-data distance histogram");
    std::string hist_data, hist_queries, hist_out;
    size_t hist_sample = 0;
    uint64_t hist_seed = 0;
    hist->add_option("--data,--in", hist_data, "dataset path")->required();
    hist->add_option("--queries", hist_queries, "query path")->required();
    hist->add_option("--sample", hist_sample, "data points sampled per query (0 = all)");
    hist->add_option("--seed", hist_seed, "sampling seed");
    hist->add_option("--out", hist_out, "histogram CSV output path (default stdout)");

    // build
    auto* build = app.add_subcommand("build", "build an index once and report its shape");
    std::string build_data;
    uint64_t build_seed = 0;
    MethodFlags build_flags;
    build->add_option("--data,--in", build_data, "dataset path")->required();
    build->add_option("--seed", build_seed, "random seed");
    build_flags.attach(build);

    // query
    auto* query = app.add_subcommand("query", "run queries and emit per-query metrics");
    std::string query_data, query_queries, query_truth, query_out;
    uint64_t query_seed = 0;
    uint32_t query_repeats = 5;
    bool fixed_seeds = false;
    MethodFlags query_flags;
    query->add_option("--data,--in", query_data, "dataset path")->required();
    query->add_option("--queries", query_queries, "query path")->required();
    query->add_option("--truth", query_truth, "ground truth CSV path")->required();
    query->add_option("--seed", query_seed, "random seed");
    query->add_option("--repeats", query_repeats, "averaging runs per query");
    query->add_flag("--fixed-seeds", fixed_seeds,
                    "rebuild from the same seed every repeat instead of redrawing");
    query->add_option("--out", query_out, "metrics CSV output path (default stdout)");
    query_flags.attach(query);

    // bench
    auto* bench = app.add_subcommand("bench", "time the two covering hash code paths");
    std::vector<size_t> bench_d{128};
    std::vector<uint32_t> bench_r{5, 6, 7};
    size_t bench_queries = 1000;
    uint64_t bench_seed = 0;
    std::string bench_out;
    bench->add_option("--d", bench_d, "dimensions to test (repeatable)");
    bench->add_option("--r", bench_r, "radii to test (repeatable)");
    bench->add_option("--queries", bench_queries, "queries per cell");
    bench->add_option("--seed", bench_seed, "random seed");
    bench->add_option("--out", bench_out, "timing CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (gen->parsed()) {
        SyntheticSpec spec;
        spec.data_size = gen_n;
        spec.dims = gen_d;
        spec.query_count = gen_queries;
        spec.planted = parse_plants(gen_plants);
        spec.seed = gen_seed;
        SyntheticWorkload w = gen_synthetic(spec);
        if (gen_text) {
            save_dataset_text(w.data, gen_data_out);
            save_dataset_text(w.queries, gen_queries_out);
        } else {
            save_dataset(w.data, gen_data_out);
            save_dataset(w.queries, gen_queries_out);
        }
        std::cout << "wrote " << w.data.size() << " points and " << w.queries.size()
                  << " queries, d=" << w.data.dims << "\n";
    } else if (binz->parsed()) {
        RealMatrix rows = load_real_matrix(binz_in);
        Dataset ds = binarize(rows, binz_bits, binz_seed);
        save_dataset(ds, binz_out);
        std::cout << "wrote " << ds.size() << " codes, d=" << ds.dims << "\n";
    } else if (oracle->parsed()) {
        Dataset data = load_dataset(oracle_data);
        Dataset queries = load_dataset(oracle_queries);
        GroundTruth truth = scan_truth(data, queries, oracle_r);
        save_truth(truth, oracle_out);
        std::cout << "wrote " << truth.entries.size() << " pairs within radius " << oracle_r
                  << "\n";
    } else if (hist->parsed()) {
        Dataset data = load_dataset(hist_data);
        Dataset queries = load_dataset(hist_queries);
        std::vector<uint64_t> counts = distance_histogram(data, queries, hist_sample, hist_seed);
        std::ostringstream csv;
        csv << "distance,count\n";
        for (size_t d = 0; d < counts.size(); ++d)
            if (counts[d] != 0) csv << d << ',' << counts[d] << "\n";
        if (hist_out.empty()) {
            std::cout << csv.str();
        } else {
            open_out(hist_out) << csv.str();
        }
    } else if (build->parsed()) {
        Dataset data = load_dataset(build_data);
        ExperimentConfig cfg;
        build_flags.fill(cfg);
        cfg.seed = build_seed;
        auto t0 = std::chrono::steady_clock::now();
        if (cfg.method == "linear") {
            std::cout << "linear scan needs no index (" << data.size() << " points)\n";
            return kExitOk;
        }
        if (cfg.method == "mih") {
            uint32_t parts =
                cfg.mih_parts ? *cfg.mih_parts : default_mih_parts(data.dims, data.size());
            MihIndex index = build_mih(data, parts);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            size_t entries = 0;
            for (const auto& t : index.tables) entries += t.entry_count();
            std::cout << "mih: " << index.parts << " substring tables, " << entries
                      << " entries, built in " << secs << " s\n";
            return kExitOk;
        }
        Rng rng = Rng(cfg.seed).stream("run", 0).stream("index");
        Rng plan_rng = Rng(cfg.seed).stream("run", 0).stream("plan");
        PreprocessPlan plan = make_plan(data.dims, cfg.radius, cfg.c, data.size(), plan_rng,
                                        cfg.method == "classic"
                                            ? std::optional<PlanOverride>(PlanOverride{PlanKind::identity, 1})
                                            : cfg.plan_override,
                                        cfg.table_budget);
        IndexOptions opt;
        opt.delta = cfg.delta;
        opt.k_override = cfg.k_override;
        opt.tables_override = cfg.tables_override;
        opt.include_zero_column = cfg.include_zero_column;
        Method method = cfg.method == "classic"       ? Method::classic
                        : cfg.method == "bclsh"       ? Method::covering_reference
                                                      : Method::covering_batch;
        IndexSet index = build_index(data, method, cfg.radius, plan, rng, opt);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const char* kind = plan.kind == PlanKind::identity    ? "identity"
                           : plan.kind == PlanKind::replicate ? "replicate"
                                                              : "partition";
        std::cout << cfg.method << ": plan " << kind << " t=" << plan.t << ", "
                  << index.table_count() << " tables, " << index.entry_count()
                  << " entries, built in " << secs << " s\n";
    } else if (query->parsed()) {
        Dataset data = load_dataset(query_data);
        Dataset queries = load_dataset(query_queries);
        GroundTruth truth = load_truth(query_truth);
        ExperimentConfig cfg;
        query_flags.fill(cfg);
        cfg.seed = query_seed;
        cfg.repeats = query_repeats;
        cfg.fresh_seeds = !fixed_seeds;
        std::vector<MetricsRow> rows = run_experiment(data, queries, truth, cfg);
        if (query_out.empty()) {
            write_metrics(rows, std::cout);
        } else {
            auto out = open_out(query_out);
            write_metrics(rows, out);
        }
    } else if (bench->parsed()) {
        std::vector<HashTimingRow> rows =
            time_hash_paths(bench_d, bench_r, bench_queries, bench_seed);
        if (bench_out.empty()) {
            write_hash_timings(rows, std::cout);
        } else {
            auto out = open_out(bench_out);
            write_hash_timings(rows, out);
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
