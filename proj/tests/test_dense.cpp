#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "subsum/dense.hpp"

using namespace subsum;

TEST_CASE("dense threshold and gate formulas") {
    DenseConfig cfg{2, 3};
    CHECK(dense_threshold(100, 16, 10, cfg) == doctest::Approx(2.0 * 100 * 4 * 4 / 10));
    CHECK(dense_gate_bound(16, cfg) == doctest::Approx(3.0 * 4 * 4));
    CHECK(dense_threshold(100, 0, 10, cfg) == 0);
    CHECK(dense_gate_bound(0, cfg) == 0);
}

TEST_CASE("dense structure on the first sixty-four integers") {
    std::vector<u64> z;
    for (u64 v = 1; v <= 64; ++v) z.push_back(v);
    DenseConfig small{0.05, 0.5};
    auto s = build_dense_structure(z, 64, small);
    CHECK(s.l == 64);
    CHECK(s.sigma == 64 * 65 / 2);
    CHECK(s.dense);  // 64 > 0.5 * 8 * 6
    CHECK(s.threshold == doctest::Approx(0.05 * 2080 * 8 * 6 / 64));
    for (u64 t : {100u, 500u, 1000u, 1500u, 1977u}) {
        REQUIRE(s.in_range(double(t)));
        auto a = query_max_below(s, double(t));
        CHECK(a.value == t);  // every sum up to sigma is attainable
        u64 sum = 0;
        for (u64 v : a.subset) sum += v;
        CHECK(sum == a.value);
        CHECK(ref::as_set(a.subset).size() == a.subset.size());
    }
    CHECK_THROWS_AS(query_max_below(s, 10), InputError);
    CHECK_THROWS_AS(query_max_below(s, double(s.sigma) - 10), InputError);
}

TEST_CASE("dense structure rejects invalid sets") {
    CHECK_THROWS_AS(build_dense_structure({}), InputError);
    CHECK_THROWS_AS(build_dense_structure({3, 5, 3}), InputError);
    CHECK_THROWS_AS(build_dense_structure({0, 5}), InputError);
    CHECK_THROWS_AS(build_dense_structure({3, 50}, 10), InputError);
    CHECK_THROWS_AS(build_dense_structure({3, 5}, std::nullopt, {}, std::vector<i64>{1}), InputError);
    CHECK_FALSE(build_dense_structure({3, 5, 9}).dense);  // default constants
}

TEST_CASE("dense queries match the reference maximum") {
    std::mt19937_64 rng(5);
    DenseConfig small{0.01, 0.1};
    for (int trial = 0; trial < 30; ++trial) {
        const u64 l = 50 + rng() % 200;
        auto z = ref::random_set(rng, 5 + rng() % 40, 1, l);
        std::vector<i64> ids;
        for (size_t i = 0; i < z.size(); ++i) ids.push_back(i64(100 + i));
        auto s = build_dense_structure(z, l, small, ids);
        for (int q = 0; q < 10; ++q) {
            const double t = double(rng() % (s.sigma + 1));
            if (!s.in_range(t)) continue;
            auto a = query_max_below(s, t);
            REQUIRE(a.value == ref::best_below(z, u64(t)));
            u64 sum = 0;
            for (const Pick& p : a.witness) {
                REQUIRE(p.item >= 100);
                REQUIRE(z[size_t(p.item - 100)] == u64(p.unit));
                REQUIRE(p.count == 1);
                sum += u64(p.unit);
            }
            REQUIRE(sum == a.value);
        }
    }
}
