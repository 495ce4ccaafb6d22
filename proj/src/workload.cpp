#include "fclsh/workload.hpp"

#include "fclsh/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace fclsh {

SyntheticWorkload gen_synthetic(const SyntheticSpec& spec) {
    if (spec.dims == 0) throw UsageError("gen: dims must be positive");
    if (spec.data_size == 0) throw UsageError("gen: data size must be positive");

    size_t planted_per_query = 0;
    for (const PlantSpec& p : spec.planted) {
        if (p.distance > spec.dims)
            throw UsageError("gen: planted distance " + std::to_string(p.distance) +
                             " exceeds dims " + std::to_string(spec.dims));
        planted_per_query += p.count;
    }
    if (planted_per_query * spec.query_count > spec.data_size)
        throw UsageError("gen: more planted points than the dataset can hold");

    Rng root(spec.seed);
    Rng query_rng = root.stream("queries");
    Rng plant_rng = root.stream("planted");
    Rng background_rng = root.stream("background");

    SyntheticWorkload w;
    w.queries.dims = spec.dims;
    w.data.dims = spec.dims;
    for (size_t i = 0; i < spec.query_count; ++i)
        w.queries.points.push_back(BitVector::random(spec.dims, query_rng));

    std::vector<uint32_t> positions(spec.dims);
    std::iota(positions.begin(), positions.end(), 0u);
    for (size_t i = 0; i < spec.query_count; ++i) {
        for (const PlantSpec& p : spec.planted) {
            for (uint32_t c = 0; c < p.count; ++c) {
                plant_rng.shuffle(positions);
                BitVector v = w.queries.points[i];
                for (uint32_t j = 0; j < p.distance; ++j)
                    v.set(positions[j], !v.get(positions[j]));
                w.data.points.push_back(std::move(v));
            }
        }
    }
    while (w.data.points.size() < spec.data_size)
        w.data.points.push_back(BitVector::random(spec.dims, background_rng));
    return w;
}

GroundTruth scan_truth(const Dataset& data, const Dataset& queries, uint32_t radius) {
    if (data.dims != queries.dims)
        throw UsageError("truth: data and query widths differ");
    GroundTruth truth;
    truth.radius = radius;
    for (size_t qi = 0; qi < queries.size(); ++qi) {
        for (size_t pi = 0; pi < data.size(); ++pi) {
            size_t d = hamming_distance(queries[qi], data[pi]);
            if (d <= radius)
                truth.entries.push_back(TruthEntry{static_cast<uint32_t>(qi),
                                                   static_cast<uint32_t>(pi),
                                                   static_cast<uint32_t>(d)});
        }
    }
    return truth;
}

void save_truth(const GroundTruth& truth, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw UsageError("truth: cannot open '" + path + "' for writing");
    out << "# radius=" << truth.radius << "\n";
    out << "query_id,point_id,distance\n";
    for (const TruthEntry& e : truth.entries)
        out << e.query << ',' << e.point << ',' << e.distance << "\n";
    if (!out) throw DataError("truth: write to '" + path + "' failed");
}

GroundTruth load_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("truth: cannot open '" + path + "'");
    GroundTruth truth;
    std::string line;
    bool have_radius = false;
    bool have_header = false;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto eq = line.find("radius=");
            if (eq != std::string::npos) {
                truth.radius = static_cast<uint32_t>(std::stoul(line.substr(eq + 7)));
                have_radius = true;
            }
            continue;
        }
        if (!have_header) { // column names
            have_header = true;
            continue;
        }
        TruthEntry e;
        char c1 = 0, c2 = 0;
        std::istringstream row(line);
        if (!(row >> e.query >> c1 >> e.point >> c2 >> e.distance) || c1 != ',' || c2 != ',')
            throw DataError("truth: malformed line " + std::to_string(lineno));
        truth.entries.push_back(e);
    }
    if (!have_radius)
        for (const TruthEntry& e : truth.entries)
            truth.radius = std::max(truth.radius, e.distance);
    std::sort(truth.entries.begin(), truth.entries.end(), [](const TruthEntry& a, const TruthEntry& b) {
        return a.query != b.query ? a.query < b.query : a.point < b.point;
    });
    return truth;
}

std::vector<std::vector<TruthEntry>> group_by_query(const GroundTruth& truth, size_t query_count) {
    std::vector<std::vector<TruthEntry>> grouped(query_count);
    for (const TruthEntry& e : truth.entries) {
        if (e.query >= query_count)
            throw DataError("truth: query id " + std::to_string(e.query) + " out of range");
        grouped[e.query].push_back(e);
    }
    return grouped;
}

std::vector<uint64_t> distance_histogram(const Dataset& data, const Dataset& queries,
                                         size_t sample_per_query, uint64_t seed) {
    if (data.dims != queries.dims)
        throw UsageError("histogram: data and query widths differ");
    std::vector<uint64_t> counts(data.dims + 1, 0);
    Rng rng = Rng(seed).stream("histogram");
    for (size_t qi = 0; qi < queries.size(); ++qi) {
        if (sample_per_query == 0 || sample_per_query >= data.size()) {
            for (size_t pi = 0; pi < data.size(); ++pi)
                ++counts[hamming_distance(queries[qi], data[pi])];
        } else {
            for (size_t s = 0; s < sample_per_query; ++s) {
                size_t pi = static_cast<size_t>(rng.below(data.size()));
                ++counts[hamming_distance(queries[qi], data[pi])];
            }
        }
    }
    return counts;
}

RealMatrix load_real_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("matrix: cannot open '" + path + "'");
    RealMatrix rows;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        std::vector<double> values;
        double x;
        while (row >> x) {
            if (!std::isfinite(x))
                throw DataError("matrix: non-finite value on line " + std::to_string(lineno));
            values.push_back(x);
        }
        if (!row.eof())
            throw DataError("matrix: unparsable value on line " + std::to_string(lineno));
        if (values.empty()) continue;
        if (!rows.empty() && values.size() != rows.front().size())
            throw DataError("matrix: line " + std::to_string(lineno) + " has " +
                            std::to_string(values.size()) + " values, expected " +
                            std::to_string(rows.front().size()));
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw DataError("matrix: no rows in '" + path + "'");
    return rows;
}

RealMatrix random_hyperplanes(size_t bits, size_t dim, Rng& rng) {
    if (bits == 0 || dim == 0) throw UsageError("hyperplanes: bits and dim must be positive");
    RealMatrix planes(bits, std::vector<double>(dim));
    for (auto& plane : planes)
        for (double& x : plane) x = rng.gaussian();
    return planes;
}

Dataset binarize(const RealMatrix& rows, const RealMatrix& planes) {
    if (rows.empty()) throw UsageError("binarize: no input rows");
    if (planes.empty()) throw UsageError("binarize: no hyperplanes");
    size_t dim = rows.front().size();
    for (const auto& plane : planes)
        if (plane.size() != dim)
            throw UsageError("binarize: hyperplane width does not match the rows");
    Dataset out;
    out.dims = planes.size();
    for (const auto& row : rows) {
        BitVector v(out.dims);
        for (size_t j = 0; j < planes.size(); ++j) {
            double dot = 0.0;
            for (size_t i = 0; i < dim; ++i) dot += row[i] * planes[j][i];
            if (dot >= 0.0) v.set(j, true);
        }
        out.points.push_back(std::move(v));
    }
    return out;
}

Dataset binarize(const RealMatrix& rows, size_t bits, uint64_t seed) {
    if (rows.empty()) throw UsageError("binarize: no input rows");
    Rng rng = Rng(seed).stream("hyperplanes");
    return binarize(rows, random_hyperplanes(bits, rows.front().size(), rng));
}

} // namespace fclsh
