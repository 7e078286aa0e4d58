#include <cmath>
#include <numeric>

#include "doctest.h"
#include "helpers.hpp"
#include "subsum/preprocess.hpp"

using namespace subsum;

TEST_CASE("trivial gate") {
    auto a = trivial_gate(MultiSet::from_items({5, 6}), 4);
    CHECK(a.solved);
    CHECK(a.kept.cardinality() == 0);
    auto b = trivial_gate(MultiSet::from_items({1, 1}), 10);
    CHECK(b.solved);
    CHECK(b.kept.total() == 2);
    auto c = trivial_gate(MultiSet::from_items({6, 6}), 10);
    CHECK_FALSE(c.solved);
    CHECK(c.kept.total() == 12);
    auto z = trivial_gate(MultiSet::from_items({0, 0, 3}), 10);
    CHECK(z.solved);
    CHECK(z.kept.items() == std::vector<u64>{3});
}

TEST_CASE("small item packing") {
    // eps t / 8 = 10 with eps = 1/8 and t = 640: pairs reach eps t / 4.
    auto b = pack_small_items(std::vector<u64>(10, 10), 0.125, 640);
    REQUIRE(b.size() == 5);
    for (const auto& x : b) {
        CHECK(x.sum == 20);
        CHECK(x.members.size() == 2);
    }
    CHECK_THROWS_AS(pack_small_items({25}, 0.125, 640), InputError);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const u64 t = 1000 + rng() % 100000;
        const double eps = 0.02 + double(rng() % 100) / 1000;
        const u64 cap = u64(std::ceil(eps * double(t) / 4)) - 1;
        if (cap == 0) continue;
        auto small = ref::random_items(rng, rng() % 60, 1, cap);
        auto bundles = pack_small_items(small, eps, t);
        std::vector<size_t> seen;
        for (size_t k = 0; k < bundles.size(); ++k) {
            u64 sum = 0;
            for (size_t m : bundles[k].members) sum += small[m], seen.push_back(m);
            REQUIRE(sum == bundles[k].sum);
            REQUIRE(double(sum) < eps * double(t) / 2);
            if (k + 1 < bundles.size()) REQUIRE(double(sum) >= eps * double(t) / 4);
        }
        std::sort(seen.begin(), seen.end());
        std::vector<size_t> all(small.size());
        std::iota(all.begin(), all.end(), 0);
        REQUIRE(seen == all);
    }
}

TEST_CASE("multiplicity reduction") {
    auto three = reduce_multiset(MultiSet::from_items({3, 3, 3}));
    CHECK(three.b.items() == std::vector<u64>{3, 6});
    auto distinct = reduce_multiset(MultiSet::from_items({2, 7, 9}));
    CHECK(distinct.b.items() == std::vector<u64>{2, 7, 9});
    auto fives = reduce_multiset(MultiSet::from_items({2, 2, 2, 2, 2}));
    CHECK(ref::subset_sums(fives.b.items()) == ref::subset_sums({2, 2, 2, 2, 2}));

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        auto items = ref::random_items(rng, 1 + rng() % 30, 1, 6);
        MultiSet a = MultiSet::from_items(items);
        auto r = reduce_multiset(a);
        REQUIRE(ref::subset_sums(r.b.items()) == ref::subset_sums(a.items()));
        for (auto [v, c] : r.b.counts()) REQUIRE(c <= 2);
        // Constituents partition the input and re-sum to their element.
        std::vector<i64> ids;
        for (const auto& e : r.elements) {
            REQUIRE(e.value == (e.base << e.p));
            u64 sum = 0;
            for (i64 id : e.constituents) {
                const u64 v = a.items()[size_t(id)];
                REQUIRE(v <= e.base);
                sum += v;
                ids.push_back(id);
            }
            REQUIRE(sum == e.value);
        }
        std::sort(ids.begin(), ids.end());
        std::vector<i64> all(a.cardinality());
        std::iota(all.begin(), all.end(), 0);
        REQUIRE(ids == all);
    }
}

TEST_CASE("bounded preprocessing audits") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const double eps = trial % 2 ? 1.0 / 16 : 0.05;
        auto items = ref::random_items(rng, 20 + rng() % 60, 1, 100000);
        items.push_back(200000);  // above t, dropped
        MultiSet x = MultiSet::from_items(items);
        const u64 t = 150000;
        auto in = preprocess_bounded(x, t, eps, 6);
        CHECK(in.kappa == doctest::Approx(4 / (eps * eps * eps * double(t))));
        CHECK(in.t_hat == doctest::Approx((1 + eps) * 4 / (eps * eps * eps)));
        REQUIRE(in.originals.size() == items.size() - 1);

        // Every original item lands in exactly one Z item.
        std::vector<size_t> seen;
        for (const auto& z : in.z) {
            u64 sum = 0;
            for (size_t o : z.originals) sum += in.originals[o], seen.push_back(o);
            REQUIRE(sum == z.value);
        }
        std::sort(seen.begin(), seen.end());
        REQUIRE(seen.size() == in.originals.size());
        REQUIRE(std::adjacent_find(seen.begin(), seen.end()) == seen.end());

        // F items approximate the scaled sums of their Z constituents.
        std::vector<i64> all_f;
        for (size_t fi = 0; fi < in.f.size(); ++fi) {
            const FItem& f = in.f[fi];
            all_f.push_back(i64(fi));
            double scaled = 0;
            for (size_t zi : f.zitems) scaled += double(in.z[zi].value) * in.kappa;
            const ItemGroup& g = in.groups[f.group];
            const double bound = g.residual ? 1e-9 : eps * (1 + 1e-9);
            REQUIRE(std::fabs(f.value - scaled) <= bound * scaled);
            REQUIRE(f.value == doctest::Approx(g.beta * double(f.h)));
            bool listed = false;
            for (const auto& gi : g.items) listed |= gi.fid == i64(fi) && gi.h == f.h;
            REQUIRE(listed);
        }
        for (const auto& g : in.groups)
            for (const auto& gi : g.items) {
                u64 p = 1;
                for (u64 h : gi.factors) p *= h;
                REQUIRE(p == gi.h);
            }
        REQUIRE(in.back_map(all_f) == seen);
        CHECK(in.worst_rounding <= eps);
    }
}

TEST_CASE("unbounded gate") {
    auto exact = unbounded_gate({30, 100}, 100, 0.1);
    CHECK(exact.solved);
    CHECK(exact.item == 100);
    CHECK(exact.copies == 1);
    auto tiny = unbounded_gate({1}, 100, 0.1);
    CHECK(tiny.solved);
    CHECK(tiny.copies == 101);
    CHECK_FALSE(unbounded_gate({50}, 100, 0.1).solved);
    CHECK_FALSE(unbounded_gate({111}, 100, 0.1).solved);
}

TEST_CASE("unbounded preprocessing") {
    const double eps = 1.0 / 16;
    CHECK(unbounded_threshold(eps) == 8);  // 2^(1 + floor(log2 5))
    std::mt19937_64 rng(12);
    const u64 t = 1000000;
    auto x = ref::random_set(rng, 40, u64(eps * t) + 1, t - 1);
    auto in = preprocess_unbounded(x, t, eps);
    size_t count = 0;
    for (const auto& g : in.groups) {
        REQUIRE_FALSE(g.items.empty());
        for (size_t i = 0; i < g.items.size(); ++i) {
            const auto& it = g.items[i];
            if (i) REQUIRE(g.items[i - 1].h < it.h);
            REQUIRE(std::binary_search(x.begin(), x.end(), it.original));
            const double scaled = double(it.original) / in.unit;
            REQUIRE(std::fabs(g.rho * double(it.h) - scaled) <= eps * scaled * (1 + 1e-9));
            ++count;
        }
        CHECK(g.n == u64(std::floor(in.t_hat / (g.rho * double(g.items.front().h)))));
        CHECK(g.l >= in.thresh);
    }
    CHECK(count <= x.size());
    CHECK_THROWS_AS(preprocess_unbounded({10}, 1000, eps), InputError);
}
