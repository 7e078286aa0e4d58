#include "doctest.h"
#include "helpers.hpp"
#include "subsum/core.hpp"

using namespace subsum;

TEST_CASE("multiset aggregation") {
    MultiSet empty = MultiSet::from_items({});
    CHECK(empty.empty());
    CHECK(empty.total() == 0);
    CHECK(empty.cardinality() == 0);

    MultiSet a = MultiSet::from_items({3, 3, 5});
    CHECK(a.count(3) == 2);
    CHECK(a.count(5) == 1);
    CHECK(a.total() == 11);
    CHECK(a.cardinality() == 3);
    CHECK(a.distinct() == 2);

    MultiSet b = MultiSet::from_items({1, 2, 3});
    CHECK(b.support() == std::vector<u64>{1, 2, 3});
    CHECK(b.total() == 6);
}

TEST_CASE("multiset mutation keeps totals consistent") {
    std::mt19937_64 rng(7);
    MultiSet m;
    std::vector<u64> mirror;
    for (int step = 0; step < 500; ++step) {
        if (mirror.empty() || rng() % 3) {
            u64 v = rng() % 20;
            m.add(v);
            mirror.push_back(v);
        } else {
            size_t i = rng() % mirror.size();
            m.remove(mirror[i]);
            mirror.erase(mirror.begin() + long(i));
        }
        u64 total = 0;
        for (u64 v : mirror) total += v;
        REQUIRE(m.total() == total);
        REQUIRE(m.cardinality() == mirror.size());
        REQUIRE(m.distinct() <= m.cardinality());
    }
    CHECK_THROWS_AS(m.remove(12345), InputError);
}

TEST_CASE("multiset containment and items") {
    MultiSet a = MultiSet::from_items({1, 1, 2, 7});
    CHECK(a.contains(MultiSet::from_items({1, 7})));
    CHECK(a.contains(MultiSet::from_items({1, 1})));
    CHECK_FALSE(a.contains(MultiSet::from_items({1, 1, 1})));
    CHECK(a.items() == std::vector<u64>{1, 1, 2, 7});
    CHECK(a.min() == 1);
    CHECK(a.max() == 7);
}

TEST_CASE("checked arithmetic") {
    CHECK(checked_add(2, 3) == 5);
    CHECK_THROWS_AS(checked_add(~u64(0), 1), OverflowError);
    CHECK(checked_mul(1u << 20, 1u << 20) == (u64(1) << 40));
    CHECK_THROWS_AS(checked_mul(u64(1) << 40, u64(1) << 40), OverflowError);
}

TEST_CASE("approximate set verification") {
    std::vector<double> s{0, 10};
    CHECK(verify_apx_set(s, s, 0, 10, 0).ok);
    CHECK(verify_apx_set({0, 9}, s, 0.1, 10, 0).ok);
    auto bad = verify_apx_set({0, 12}, s, 0.1, 10, 0);
    CHECK_FALSE(bad.ok);
    CHECK_FALSE(bad.upper_ok);

    // A missing target near the cap breaks completeness.
    auto incomplete = verify_apx_set({0}, s, 0.1, 10, 0);
    CHECK_FALSE(incomplete.complete_ok);
    // The additive allowance rescues it.
    CHECK(verify_apx_set({0, 8}, s, 0.1, 10, 1).ok);
    // Targets above u are not required.
    CHECK(verify_apx_set({0}, std::vector<double>{0, 50}, 0.1, 10, 0).ok);
}

TEST_CASE("power-of-two exponent") {
    CHECK(pow2_floor(1) == 0);
    CHECK(pow2_floor(8) == 3);
    CHECK(pow2_floor(9.5) == 3);
    CHECK(pow2_floor(15.999) == 3);
    CHECK(pow2_floor(16) == 4);
    CHECK_THROWS_AS(pow2_floor(0.5), InputError);
    CHECK(floor_log2(1) == 0);
    CHECK(floor_log2(1025) == 10);
}

TEST_CASE("approximation parameters are validated") {
    ApproxParams p;
    CHECK_NOTHROW(p.validate());
    p.eps = 0;
    CHECK_THROWS_AS(p.validate(), InputError);
    p.eps = 0.1;
    p.k = p.d + 1;
    CHECK_THROWS_AS(p.validate(), InputError);
}
