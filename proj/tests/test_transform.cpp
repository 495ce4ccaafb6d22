#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "fclsh/bitvec.hpp"
#include "fclsh/errors.hpp"
#include "fclsh/rng.hpp"
#include "fclsh/transform.hpp"

using namespace fclsh;

TEST_CASE("plan selection goldens") {
    SUBCASE("small work budget per query replicates") {
        Rng rng(1);
        PreprocessPlan p = make_plan(64, 2, 1.0, size_t(1) << 16, rng);
        CHECK(p.kind == PlanKind::replicate);
        CHECK(p.t == 8);  // floor(16 / (1*2))
        CHECK(p.per_part_radius == 16);
        CHECK(p.output_dims() == 64 * 8);
        CHECK(plan_table_count(p) == (size_t(1) << 17) - 1);
    }
    SUBCASE("table budget walks the replication factor down") {
        Rng rng(1);
        PreprocessPlan p =
            make_plan(64, 2, 1.0, size_t(1) << 16, rng, std::nullopt, 1000);
        CHECK(p.kind == PlanKind::replicate);
        CHECK(p.t == 4);  // 2^(2t+1)-1 <= 1000 forces t <= 4
        CHECK(p.per_part_radius == 8);
        CHECK(plan_table_count(p) == 511);
    }
    SUBCASE("balanced work keeps the identity") {
        Rng rng(1);
        PreprocessPlan p = make_plan(64, 4, 4.0, size_t(1) << 16, rng);
        CHECK(p.kind == PlanKind::identity);
        CHECK(p.t == 1);
        CHECK(p.per_part_radius == 4);
        CHECK(plan_table_count(p) == 31);
    }
    SUBCASE("moderate radius replicates twice") {
        Rng rng(1);
        PreprocessPlan p = make_plan(64, 5, 1.0, size_t(1) << 14, rng);
        CHECK(p.kind == PlanKind::replicate);
        CHECK(p.t == 2);  // floor(14/5)
        CHECK(p.per_part_radius == 10);
    }
    SUBCASE("large radius partitions") {
        Rng rng(1);
        PreprocessPlan p = make_plan(64, 16, 1.0, size_t(1) << 14, rng);
        CHECK(p.kind == PlanKind::partition);
        CHECK(p.t == 2);  // ceil(16/14)
        CHECK(p.per_part_radius == 8);
        CHECK(p.part_count() == 2);
        CHECK(plan_table_count(p) == 2 * 511);
        CHECK(p.permutation.size() == 64);
        CHECK(p.parts.size() == 2);
    }
    SUBCASE("replication factor one collapses to identity") {
        Rng rng(1);
        PreprocessPlan p = make_plan(4, 3, 1.0, 16, rng);
        CHECK(p.kind == PlanKind::identity);
        CHECK(p.t == 1);
    }
}

TEST_CASE("plan overrides pin the branch") {
    Rng rng(9);
    PlanOverride rep{PlanKind::replicate, 3};
    PreprocessPlan p = make_plan(64, 2, 4.0, size_t(1) << 10, rng, rep);
    CHECK(p.kind == PlanKind::replicate);
    CHECK(p.t == 3);
    CHECK(p.per_part_radius == 6);

    PlanOverride part{PlanKind::partition, 2};
    PreprocessPlan q = make_plan(64, 8, 1.0, size_t(1) << 20, rng, part);
    CHECK(q.kind == PlanKind::partition);
    CHECK(q.t == 2);
    CHECK(q.per_part_radius == 4);

    PlanOverride ident{PlanKind::identity, 1};
    PreprocessPlan s = make_plan(64, 2, 1.0, size_t(1) << 16, rng, ident);
    CHECK(s.kind == PlanKind::identity);

    // t = 1 collapses any kind.
    PlanOverride one{PlanKind::replicate, 1};
    CHECK(make_plan(64, 2, 1.0, size_t(1) << 16, rng, one).kind ==
          PlanKind::identity);

    CHECK_THROWS_AS(
        make_plan(64, 2, 1.0, 1024, rng, PlanOverride{PlanKind::identity, 2}),
        UsageError);
    CHECK_THROWS_AS(
        make_plan(64, 2, 1.0, 1024, rng, PlanOverride{PlanKind::replicate, 0}),
        UsageError);
    // Partition cannot use more parts than the radius or the width allows.
    CHECK_THROWS_AS(
        make_plan(64, 4, 1.0, 1024, rng, PlanOverride{PlanKind::partition, 5}),
        UsageError);
}

TEST_CASE("partition widths are balanced with the wider parts at the tail") {
    Rng rng(3);
    PreprocessPlan p =
        make_plan(10, 6, 1.0, 16, rng, PlanOverride{PlanKind::partition, 3});
    REQUIRE(p.parts.size() == 3);
    std::vector<size_t> widths;
    for (size_t i = 0; i < 3; ++i) widths.push_back(p.part_dims(i));
    CHECK(widths == std::vector<size_t>{3, 3, 4});
    CHECK(p.parts.front().first == 0);
    for (size_t i = 1; i < 3; ++i)
        CHECK(p.parts[i].first == p.parts[i - 1].second);
    CHECK(p.parts.back().second == 10);

    // The permutation touches every coordinate exactly once.
    std::vector<uint32_t> sorted = p.permutation;
    std::sort(sorted.begin(), sorted.end());
    for (uint32_t i = 0; i < 10; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("plan validation") {
    Rng rng(5);
    CHECK_THROWS_AS(make_plan(0, 2, 1.0, 1024, rng), UsageError);
    CHECK_THROWS_AS(make_plan(64, 0, 1.0, 1024, rng), UsageError);
    CHECK_THROWS_AS(make_plan(64, 64, 1.0, 1024, rng), UsageError);
    CHECK_THROWS_AS(make_plan(64, 2, 0.5, 1024, rng), UsageError);
    CHECK_THROWS_AS(make_plan(64, 2, 1.0, 1, rng), UsageError);
    // Identity whose own table count cannot fit the budget is an error, not
    // a silent downgrade.
    CHECK_THROWS_AS(
        make_plan(64, 8, 8.0, size_t(1) << 16, rng,
                  PlanOverride{PlanKind::identity, 1}, 100),
        ResourceError);
}

TEST_CASE("replication scales distances exactly") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        size_t d = 1 + rng.below(150);
        uint32_t t = 1 + static_cast<uint32_t>(rng.below(5));
        BitVector a = BitVector::random(d, rng);
        BitVector b = BitVector::random(d, rng);
        BitVector ra = replicate_vector(a, t);
        BitVector rb = replicate_vector(b, t);
        CHECK(ra.dims() == d * t);
        CHECK(hamming_distance(ra, rb) == t * hamming_distance(a, b));
        for (size_t j = 0; j < d * t; ++j) CHECK(ra.get(j) == a.get(j % d));
    }
}

TEST_CASE("splitting preserves every coordinate and the total distance") {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        Rng sub = rng.stream("split", trial);
        size_t d = 8 + sub.below(200);
        uint32_t r = 4 + static_cast<uint32_t>(sub.below(8));
        uint32_t t = 2 + static_cast<uint32_t>(sub.below(3));
        if (t > r) t = r;
        PreprocessPlan plan = make_plan(d, r, 1.0, 1 << 10, sub,
                                        PlanOverride{PlanKind::partition, t});
        BitVector a = BitVector::random(d, sub);
        BitVector b = BitVector::random(d, sub);
        auto pa = split_vector(plan, a);
        auto pb = split_vector(plan, b);
        REQUIRE(pa.size() == t);
        size_t width_sum = 0;
        uint64_t dist_sum = 0;
        size_t ones = 0;
        for (size_t p = 0; p < t; ++p) {
            width_sum += pa[p].dims();
            dist_sum += hamming_distance(pa[p], pb[p]);
            ones += popcount(pa[p]);
        }
        CHECK(width_sum == d);
        CHECK(dist_sum == hamming_distance(a, b));
        CHECK(ones == popcount(a));
    }
}

TEST_CASE("apply_plan shapes") {
    Rng rng(13);
    BitVector v = BitVector::random(64, rng);

    PreprocessPlan ident = make_plan(64, 4, 4.0, size_t(1) << 16, rng);
    auto a = apply_plan(ident, v);
    REQUIRE(a.size() == 1);
    CHECK(a[0] == v);

    PreprocessPlan rep =
        make_plan(64, 2, 1.0, 1 << 10, rng, PlanOverride{PlanKind::replicate, 3});
    auto b = apply_plan(rep, v);
    REQUIRE(b.size() == 1);
    CHECK(b[0].dims() == 192);
    CHECK(b[0] == replicate_vector(v, 3));

    PreprocessPlan part =
        make_plan(64, 8, 1.0, 1 << 10, rng, PlanOverride{PlanKind::partition, 2});
    auto c = apply_plan(part, v);
    REQUIRE(c.size() == 2);
    CHECK(c[0].dims() + c[1].dims() == 64);
    CHECK(c == split_vector(part, v));
}

TEST_CASE("same seed, same permutation") {
    Rng a(777), b(777), c(778);
    auto pa = make_plan(64, 8, 1.0, 1 << 10, a, PlanOverride{PlanKind::partition, 2});
    auto pb = make_plan(64, 8, 1.0, 1 << 10, b, PlanOverride{PlanKind::partition, 2});
    auto pc = make_plan(64, 8, 1.0, 1 << 10, c, PlanOverride{PlanKind::partition, 2});
    CHECK(pa.permutation == pb.permutation);
    CHECK(pa.permutation != pc.permutation);
}

TEST_CASE("some part always sees at most its share of the difference") {
    // Exhaustive over 16-bit difference patterns: whenever at most r bits are
    // set, at least one part of the permuted split holds at most floor(r/t).
    Rng rng(20);
    for (uint32_t r : {4u, 6u}) {
        for (uint32_t t : {2u, 3u}) {
            PreprocessPlan plan = make_plan(
                16, r, 1.0, 1 << 8, rng, PlanOverride{PlanKind::partition, t});
            uint32_t share = r / t;
            for (uint32_t z = 0; z < (uint32_t(1) << 16); ++z) {
                if (static_cast<uint32_t>(__builtin_popcount(z)) > r) continue;
                BitVector v(16);
                for (uint32_t i = 0; i < 16; ++i)
                    if ((z >> i) & 1) v.set(i, true);
                auto parts = split_vector(plan, v);
                bool light = false;
                for (const BitVector& piece : parts)
                    light = light || popcount(piece) <= share;
                CHECK(light);
            }
        }
    }
}
