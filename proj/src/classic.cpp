#include "fclsh/classic.hpp"

#include "fclsh/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fclsh {

uint32_t choose_k(size_t dims, uint32_t radius, size_t tables, double delta) {
    if (dims == 0) throw UsageError("choose_k: dims must be positive");
    if (radius == 0 || radius >= dims) throw UsageError("choose_k: radius must be in [1, dims)");
    if (tables == 0) throw UsageError("choose_k: need at least one table");
    if (!(delta > 0.0 && delta < 1.0)) throw UsageError("choose_k: delta must be in (0, 1)");

    double per_table = 1.0 - std::exp(std::log(delta) / static_cast<double>(tables));
    double raw = std::log(per_table) / std::log1p(-static_cast<double>(radius) / static_cast<double>(dims));
    double k = std::ceil(raw);
    double cap = static_cast<double>(kMaxSamplesPerDim) * static_cast<double>(dims);
    if (!(k >= 1.0)) return 1;
    if (k > cap) return static_cast<uint32_t>(cap);
    return static_cast<uint32_t>(k);
}

BitSampleFamily build_bit_sample_family(size_t dims, uint32_t k, size_t tables, Rng& rng,
                                        uint64_t prime) {
    if (dims == 0) throw UsageError("bit sample family: dims must be positive");
    if (k == 0) throw UsageError("bit sample family: k must be >= 1");
    if (tables == 0) throw UsageError("bit sample family: need at least one table");
    if (prime < 3 || prime % 2 == 0) throw UsageError("bit sample family: prime must be odd and > 2");

    BitSampleFamily f;
    f.dims = dims;
    f.k = k;
    f.tables = tables;
    f.prime = prime;
    f.positions.resize(tables * size_t(k));
    f.seeds.resize(tables * size_t(k));
    Rng pos_rng = rng.stream("positions");
    Rng seed_rng = rng.stream("seeds");
    for (size_t j = 0; j < f.positions.size(); ++j) {
        f.positions[j] = static_cast<uint32_t>(pos_rng.below(dims));
        f.seeds[j] = seed_rng.below(prime);
    }
    return f;
}

void hash_tables_into(const BitSampleFamily& f, const BitVector& q, std::span<uint64_t> out) {
    if (q.dims() != f.dims) throw UsageError("hash: vector width does not match the family");
    if (out.size() != f.tables) throw UsageError("hash: output span has wrong size");
    std::span<const uint64_t> words = q.words();
    for (size_t t = 0; t < f.tables; ++t) {
        const uint32_t* pos = f.positions.data() + t * f.k;
        const uint64_t* sd = f.seeds.data() + t * f.k;
        // branchless sum; k <= 4d and seeds < 2^61 keep the total in range
        unsigned __int128 acc = 0;
        for (uint32_t j = 0; j < f.k; ++j) {
            uint64_t bit = (words[pos[j] >> 6] >> (pos[j] & 63)) & 1;
            acc += sd[j] & (0 - bit);
        }
        out[t] = static_cast<uint64_t>(acc % f.prime);
    }
}

std::vector<uint64_t> hash_tables(const BitSampleFamily& f, const BitVector& q) {
    std::vector<uint64_t> out(f.tables);
    hash_tables_into(f, q, out);
    return out;
}

} // namespace fclsh
