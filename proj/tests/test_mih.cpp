#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fclsh/bitvec.hpp"
#include "fclsh/dataset.hpp"
#include "fclsh/errors.hpp"
#include "fclsh/mih.hpp"
#include "fclsh/rng.hpp"

using namespace fclsh;

namespace {

std::vector<uint32_t> brute_force(const Dataset& data, const BitVector& q, uint32_t r) {
    std::vector<uint32_t> out;
    for (size_t id = 0; id < data.size(); ++id)
        if (hamming_distance(data[id], q) <= r) out.push_back(static_cast<uint32_t>(id));
    return out;
}

}  // namespace

TEST_CASE("substring count rule") {
    CHECK(default_mih_parts(64, size_t(1) << 16) == 4);
    CHECK(default_mih_parts(128, size_t(1) << 16) == 8);
    CHECK(default_mih_parts(128, 50000) == 9);
    CHECK(default_mih_parts(32, size_t(1) << 16) == 2);
    CHECK_THROWS_AS(default_mih_parts(0, 100), UsageError);
    CHECK_THROWS_AS(default_mih_parts(64, 1), UsageError);
}

TEST_CASE("ball volume") {
    CHECK(ball_volume(16, 2) == 137);
    CHECK(ball_volume(3, 1) == 4);
    CHECK(ball_volume(4, 4) == 16);
    CHECK(ball_volume(10, 10) == 1024);
    CHECK(ball_volume(64, 2) == 2081);
    CHECK(ball_volume(5, 0) == 1);
    // Radius past the width covers the whole cube.
    CHECK(ball_volume(3, 10) == 8);
    // Huge counts saturate instead of overflowing.
    CHECK(ball_volume(128, 64) == uint64_t(1) << 63);
}

TEST_CASE("ball enumeration order and contents") {
    BitVector c = BitVector::from_string("010");
    auto ball = enumerate_ball(c, 1);
    REQUIRE(ball.size() == 4);
    CHECK(ball[0].to_string() == "010");
    CHECK(ball[1].to_string() == "110");
    CHECK(ball[2].to_string() == "000");
    CHECK(ball[3].to_string() == "011");

    BitVector c8 = BitVector::from_string("10110010");
    auto ball2 = enumerate_ball(c8, 2);
    CHECK(ball2.size() == ball_volume(8, 2));
    // Every member is distinct and within distance 2.
    std::vector<std::string> keys;
    for (const auto& v : ball2) {
        CHECK(hamming_distance(v, c8) <= 2);
        keys.push_back(v.to_string());
    }
    std::sort(keys.begin(), keys.end());
    CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());

    CHECK_THROWS_AS(enumerate_ball(c, 5), UsageError);
    Rng rng(4);
    BitVector wide = BitVector::random(64, rng);
    CHECK_THROWS_AS(enumerate_ball(wide, 8, 1'000'000), ResourceError);
}

TEST_CASE("index construction rules") {
    Rng rng(8);
    Dataset data;
    data.dims = 128;
    for (int i = 0; i < 10; ++i) data.points.push_back(BitVector::random(128, rng));

    CHECK_THROWS_AS(build_mih(data, 0), UsageError);
    CHECK_THROWS_AS(build_mih(data, 200), UsageError);
    // One part of 128 bits cannot be keyed.
    CHECK_THROWS_AS(build_mih(data, 1), UsageError);

    MihIndex idx = build_mih(data, 3);
    REQUIRE(idx.bounds.size() == 3);
    CHECK(idx.bounds[0] == std::pair<size_t, size_t>{0, 42});
    CHECK(idx.bounds[1] == std::pair<size_t, size_t>{42, 85});
    CHECK(idx.bounds[2] == std::pair<size_t, size_t>{85, 128});

    Dataset empty;
    empty.dims = 16;
    CHECK_THROWS_AS(build_mih(empty, 2), UsageError);
}

TEST_CASE("single part index is an exhaustive exact search") {
    Rng rng(21);
    Dataset data;
    data.dims = 10;
    for (int i = 0; i < 100; ++i) data.points.push_back(BitVector::random(10, rng));
    MihIndex idx = build_mih(data, 1);
    BitVector q = BitVector::random(10, rng);
    auto res = query_mih(idx, q, 10);
    CHECK(res.candidates.size() == 100);
    CHECK(res.found.size() == 100);
    auto res3 = query_mih(idx, q, 3);
    CHECK(res3.found == brute_force(data, q, 3));
}

TEST_CASE("query matches brute force exactly") {
    Rng rng(22);
    Dataset data;
    data.dims = 32;
    for (int i = 0; i < 500; ++i) data.points.push_back(BitVector::random(32, rng));
    // Plant a few close pairs so small radii have hits.
    for (int i = 0; i < 20; ++i) {
        BitVector v = data.points[i];
        v.set(rng.below(32), !v.get(0));
        data.points.push_back(v);
    }

    uint32_t parts = default_mih_parts(32, data.size());
    MihIndex idx = build_mih(data, parts);
    for (uint32_t r : {0u, 2u, 4u, 6u}) {
        for (int t = 0; t < 20; ++t) {
            const BitVector& q = data.points[rng.below(data.size())];
            auto res = query_mih(idx, q, r);
            CHECK(res.found == brute_force(data, q, r));
            CHECK(std::is_sorted(res.candidates.begin(), res.candidates.end()));
            CHECK(res.report.candidates == res.candidates.size());
            CHECK(res.report.collisions >= res.report.candidates);
            CHECK(res.report.found == res.found.size());
            // Everything found is a candidate.
            for (uint32_t id : res.found)
                CHECK(std::binary_search(res.candidates.begin(), res.candidates.end(), id));
        }
    }
}

TEST_CASE("query guards") {
    Rng rng(23);
    Dataset data;
    data.dims = 32;
    for (int i = 0; i < 64; ++i) data.points.push_back(BitVector::random(32, rng));
    MihIndex idx = build_mih(data, 2);
    BitVector q = BitVector::random(32, rng);
    CHECK_THROWS_AS(query_mih(idx, BitVector::random(16, rng), 2), UsageError);
    CHECK_THROWS_AS(query_mih(idx, q, 40), UsageError);
    // A single 32-bit substring at radius 16 wants ~2.9e9 keys.
    MihIndex one = build_mih(data, 1);
    CHECK_THROWS_AS(query_mih(one, q, 16), ResourceError);
}
