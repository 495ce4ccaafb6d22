#include "fclsh/mih.hpp"

#include "fclsh/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace fclsh {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

uint64_t substring_key(const BitVector& v, size_t begin, size_t end) {
    uint64_t key = 0;
    for (size_t j = begin; j < end; ++j)
        if (v.get(j)) key |= uint64_t(1) << (j - begin);
    return key;
}

// Visit every way of flipping `weight` of the `width` key bits, in
// lexicographic order of the flip positions.
template <typename Fn>
void for_each_flip(uint64_t base, size_t width, uint32_t weight, Fn&& fn) {
    if (weight == 0) {
        fn(base);
        return;
    }
    if (weight > width) return;
    std::vector<size_t> pick(weight);
    for (uint32_t i = 0; i < weight; ++i) pick[i] = i;
    while (true) {
        uint64_t key = base;
        for (size_t p : pick) key ^= uint64_t(1) << p;
        fn(key);
        size_t i = weight;
        bool advanced = false;
        while (i > 0) {
            --i;
            if (pick[i] + (weight - i) < width) {
                ++pick[i];
                for (size_t j = i + 1; j < weight; ++j) pick[j] = pick[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) return;
    }
}

} // namespace

uint32_t default_mih_parts(size_t dims, size_t n) {
    if (dims == 0) throw UsageError("mih: dims must be positive");
    if (n < 2) throw UsageError("mih: need at least two data points");
    double logn = std::log2(static_cast<double>(n));
    return static_cast<uint32_t>(std::ceil(static_cast<double>(dims) / logn - 1e-9));
}

MihIndex build_mih(const Dataset& data, uint32_t parts) {
    if (data.size() == 0) throw UsageError("mih: empty dataset");
    if (parts == 0) throw UsageError("mih: parts must be >= 1");
    if (parts > data.dims) throw UsageError("mih: more parts than dimensions");

    MihIndex index;
    index.dims = data.dims;
    index.parts = parts;
    index.data = &data;

    size_t base = data.dims / parts;
    size_t rem = data.dims % parts;
    size_t begin = 0;
    for (uint32_t p = 0; p < parts; ++p) {
        size_t width = base + (p >= parts - rem ? 1 : 0);
        if (width > 64)
            throw UsageError("mih: substring of " + std::to_string(width) +
                             " bits does not fit a 64-bit key; use more parts");
        index.bounds.emplace_back(begin, begin + width);
        begin += width;
    }

    index.tables.resize(parts);
    for (uint32_t p = 0; p < parts; ++p) index.tables[p].reserve(data.size());
    for (size_t id = 0; id < data.size(); ++id) {
        for (uint32_t p = 0; p < parts; ++p) {
            auto [b, e] = index.bounds[p];
            index.tables[p].add(substring_key(data[id], b, e), static_cast<uint32_t>(id));
        }
    }
    for (auto& t : index.tables) t.finalize();
    return index;
}

uint64_t ball_volume(size_t dims, uint32_t radius) {
    constexpr uint64_t cap = uint64_t(1) << 63;
    unsigned __int128 total = 0;
    unsigned __int128 binom = 1;
    for (uint32_t w = 0; w <= radius; ++w) {
        if (w > 0) {
            if (w > dims) break;
            binom = binom * (dims - w + 1) / w;
        }
        total += binom;
        if (total >= cap) return cap;
    }
    return static_cast<uint64_t>(total);
}

std::vector<BitVector> enumerate_ball(const BitVector& center, uint32_t radius, uint64_t budget) {
    if (radius > center.dims()) throw UsageError("ball: radius exceeds the vector width");
    uint64_t volume = ball_volume(center.dims(), radius);
    if (volume > budget)
        throw ResourceError("ball: " + std::to_string(volume) + " vectors exceed the budget of " +
                            std::to_string(budget));
    std::vector<BitVector> out;
    out.reserve(static_cast<size_t>(volume));
    std::vector<size_t> pick;
    for (uint32_t w = 0; w <= radius; ++w) {
        // combinations of w flip positions in lexicographic order
        pick.resize(w);
        for (uint32_t i = 0; i < w; ++i) pick[i] = i;
        if (w > center.dims()) break;
        while (true) {
            BitVector v = center;
            for (size_t p : pick) v.set(p, !v.get(p));
            out.push_back(std::move(v));
            size_t i = w;
            bool advanced = false;
            while (i > 0) {
                --i;
                if (pick[i] + (w - i) < center.dims()) {
                    ++pick[i];
                    for (size_t j = i + 1; j < w; ++j) pick[j] = pick[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
    }
    return out;
}

MihQueryResult query_mih(const MihIndex& index, const BitVector& q, uint32_t radius,
                         uint64_t ball_budget) {
    if (index.data == nullptr) throw UsageError("mih: index not built");
    if (q.dims() != index.dims) throw UsageError("mih: query width does not match the index");
    if (radius > index.dims) throw UsageError("mih: radius exceeds the vector width");

    uint32_t sub_radius = radius / index.parts;
    uint64_t total_volume = 0;
    for (uint32_t p = 0; p < index.parts; ++p) {
        auto [b, e] = index.bounds[p];
        total_volume += ball_volume(e - b, sub_radius);
        if (total_volume > ball_budget)
            throw ResourceError("mih: enumeration of " + std::to_string(total_volume) +
                                "+ keys exceeds the ball budget");
    }

    MihQueryResult res;
    const Dataset& data = *index.data;
    std::vector<uint8_t> seen(data.size(), 0);

    auto t0 = Clock::now();
    // keys per part, center first then ascending flip weight
    std::vector<std::vector<uint64_t>> keys(index.parts);
    for (uint32_t p = 0; p < index.parts; ++p) {
        auto [b, e] = index.bounds[p];
        size_t width = e - b;
        uint64_t base = substring_key(q, b, e);
        keys[p].reserve(static_cast<size_t>(ball_volume(width, sub_radius)));
        for (uint32_t w = 0; w <= sub_radius && w <= width; ++w)
            for_each_flip(base, width, w, [&](uint64_t key) { keys[p].push_back(key); });
    }
    res.report.time_s1 = seconds_since(t0);

    t0 = Clock::now();
    for (uint32_t p = 0; p < index.parts; ++p) {
        for (uint64_t key : keys[p]) {
            for (const auto& entry : index.tables[p].bucket(key)) {
                ++res.report.collisions;
                if (!seen[entry.id]) {
                    seen[entry.id] = 1;
                    res.candidates.push_back(entry.id);
                }
            }
        }
    }
    std::sort(res.candidates.begin(), res.candidates.end());
    res.report.candidates = res.candidates.size();
    res.report.time_s2 = seconds_since(t0);

    t0 = Clock::now();
    for (uint32_t id : res.candidates)
        if (hamming_distance(data[id], q) <= radius) res.found.push_back(id);
    res.report.found = res.found.size();
    res.report.time_s3 = seconds_since(t0);
    return res;
}

} // namespace fclsh
