#include "fclsh/covering.hpp"

#include "fclsh/errors.hpp"
#include "fclsh/hadamard.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace fclsh {

namespace {

void check_basic(size_t dims, uint32_t radius, uint64_t prime) {
    if (dims == 0) throw UsageError("covering family: dims must be positive");
    if (radius == 0) throw UsageError("covering family: radius must be >= 1");
    if (radius > kMaxCoveringRadius)
        throw ResourceError("covering family: radius " + std::to_string(radius) +
                            " exceeds the table budget (max " + std::to_string(kMaxCoveringRadius) + ")");
    if (prime < 3 || prime % 2 == 0)
        throw UsageError("covering family: prime must be odd and > 2");
}

void check_kind_fits(size_t dims, uint32_t radius, ConstructionKind kind) {
    size_t order = size_t(1) << (radius + 1);
    if (kind == ConstructionKind::specific && dims > order)
        throw UsageError("covering family: specific construction needs dims <= " +
                         std::to_string(order) + ", got " + std::to_string(dims));
    if (kind == ConstructionKind::general && dims <= order)
        throw UsageError("covering family: general construction needs dims > " +
                         std::to_string(order) + ", got " + std::to_string(dims));
}

inline bool codeword_bit(size_t v, uint32_t column) {
    return std::popcount(static_cast<uint64_t>(v) & column) & 1;
}

} // namespace

CoveringFamily build_covering_family(size_t dims, uint32_t radius, ConstructionKind kind,
                                     Rng& rng, const CoveringOptions& opt) {
    check_basic(dims, radius, opt.prime);
    check_kind_fits(dims, radius, kind);

    CoveringFamily f;
    f.dims = dims;
    f.radius = radius;
    f.prime = opt.prime;
    f.kind = kind;
    f.mapping.resize(dims);
    f.seeds.resize(dims);

    size_t order = f.code_order();
    if (kind == ConstructionKind::general) {
        Rng map_rng = rng.stream("mapping");
        for (size_t i = 0; i < dims; ++i) {
            f.mapping[i] = opt.include_zero_column
                               ? static_cast<uint32_t>(map_rng.below(order))
                               : static_cast<uint32_t>(1 + map_rng.below(order - 1));
        }
    } else {
        Rng perm_rng = rng.stream("permutation");
        std::vector<uint32_t> columns(order);
        std::iota(columns.begin(), columns.end(), 0u);
        perm_rng.shuffle(columns);
        for (size_t i = 0; i < dims; ++i) f.mapping[i] = columns[i];
    }

    Rng seed_rng = rng.stream("seeds");
    for (size_t i = 0; i < dims; ++i) f.seeds[i] = seed_rng.below(f.prime);
    return f;
}

CoveringFamily build_covering_family(size_t dims, uint32_t radius, Rng& rng,
                                     const CoveringOptions& opt) {
    check_basic(dims, radius, opt.prime);
    ConstructionKind kind = dims > (size_t(1) << (radius + 1)) ? ConstructionKind::general
                                                               : ConstructionKind::specific;
    return build_covering_family(dims, radius, kind, rng, opt);
}

// Unlike the random builder this does not insist on the kind/dims pairing,
// so small worked configurations with hand-picked general mappings load.
CoveringFamily make_covering_family(size_t dims, uint32_t radius, ConstructionKind kind,
                                    std::vector<uint32_t> mapping, std::vector<uint64_t> seeds,
                                    uint64_t prime) {
    check_basic(dims, radius, prime);
    if (mapping.size() != dims || seeds.size() != dims)
        throw UsageError("covering family: mapping/seeds must have one entry per dimension");

    CoveringFamily f;
    f.dims = dims;
    f.radius = radius;
    f.prime = prime;
    f.kind = kind;
    f.mapping = std::move(mapping);
    f.seeds = std::move(seeds);

    size_t order = f.code_order();
    std::vector<bool> seen(order, false);
    for (uint32_t m : f.mapping) {
        if (m >= order) throw UsageError("covering family: mapping entry out of range");
        if (kind == ConstructionKind::specific) {
            if (seen[m]) throw UsageError("covering family: specific mapping must be injective");
            seen[m] = true;
        }
    }
    for (uint64_t b : f.seeds)
        if (b >= f.prime) throw UsageError("covering family: seed out of field range");
    return f;
}

BitVector mask_row(const CoveringFamily& f, size_t v) {
    if (v == 0 || v >= f.code_order())
        throw UsageError("covering family: mask index out of range");
    BitVector g(f.dims);
    for (size_t i = 0; i < f.dims; ++i)
        if (codeword_bit(v, f.mapping[i])) g.set(i, true);
    return g;
}

size_t collision_count(const CoveringFamily& f, const BitVector& x, const BitVector& y) {
    if (x.dims() != f.dims || y.dims() != f.dims)
        throw UsageError("collision_count: vector width does not match the family");
    // x and y project identically under g_v iff no differing position is
    // kept by the mask, so only the support of x XOR y matters.
    std::vector<uint32_t> diff_columns;
    for (size_t w = 0; w < x.word_count(); ++w) {
        uint64_t bits = x.word(w) ^ y.word(w);
        while (bits != 0) {
            unsigned tz = static_cast<unsigned>(__builtin_ctzll(bits));
            diff_columns.push_back(f.mapping[w * 64 + tz]);
            bits &= bits - 1;
        }
    }
    size_t count = 0;
    for (size_t v = 1; v < f.code_order(); ++v) {
        bool hit = false;
        for (uint32_t col : diff_columns) {
            if (codeword_bit(v, col)) {
                hit = true;
                break;
            }
        }
        if (!hit) ++count;
    }
    return count;
}

void hash_reference_into(const CoveringFamily& f, const BitVector& q, std::span<uint64_t> out) {
    if (q.dims() != f.dims) throw UsageError("hash: vector width does not match the family");
    if (out.size() != f.table_count()) throw UsageError("hash: output span has wrong size");
    std::fill(out.begin(), out.end(), 0);
    size_t order = f.code_order();
    for_each_set_bit(q, [&](size_t i) {
        uint32_t col = f.mapping[i];
        uint64_t b = f.seeds[i];
        for (size_t v = 1; v < order; ++v)
            if (codeword_bit(v, col)) out[v - 1] = add_mod(out[v - 1], b, f.prime);
    });
}

std::vector<uint64_t> hash_reference(const CoveringFamily& f, const BitVector& q) {
    std::vector<uint64_t> out(f.table_count());
    hash_reference_into(f, q, out);
    return out;
}

void hash_batch_into(const CoveringFamily& f, const BitVector& q, std::span<uint64_t> out,
                     std::vector<uint64_t>& scratch) {
    if (q.dims() != f.dims) throw UsageError("hash: vector width does not match the family");
    if (out.size() != f.table_count()) throw UsageError("hash: output span has wrong size");
    scratch.assign(f.code_order(), 0);
    uint64_t l1 = 0;
    for_each_set_bit(q, [&](size_t i) {
        uint64_t b = f.seeds[i];
        scratch[f.mapping[i]] = add_mod(scratch[f.mapping[i]], b, f.prime);
        l1 = add_mod(l1, b, f.prime);
    });
    batch_hash_kernel(scratch, l1, f.prime);
    std::copy(scratch.begin() + 1, scratch.end(), out.begin());
}

std::vector<uint64_t> hash_batch(const CoveringFamily& f, const BitVector& q) {
    std::vector<uint64_t> out(f.table_count());
    std::vector<uint64_t> scratch;
    hash_batch_into(f, q, out, scratch);
    return out;
}

} // namespace fclsh
