#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "subsum/smooth.hpp"

using namespace subsum;

namespace {

std::vector<u64> product_values(const SmoothProducts& sp) {
    std::vector<u64> v;
    for (const auto& p : sp.products) v.push_back(p.value);
    return v;
}

u64 product(const std::vector<u64>& f) {
    u64 r = 1;
    for (u64 h : f) r *= h;
    return r;
}

// Smooth items drawn from the product list of the given parameters.
std::vector<SmoothItem> random_smooth_items(std::mt19937_64& rng, const SmoothProducts& sp, size_t n) {
    std::vector<SmoothItem> items;
    for (size_t i = 0; i < n; ++i) {
        const auto& p = sp.products[rng() % sp.products.size()];
        items.push_back(SmoothItem{i64(i), p.value, p.factors, 1 + rng() % 2});
    }
    return items;
}

std::vector<u64> expand(const std::vector<SmoothItem>& items) {
    std::vector<u64> out;
    for (const auto& it : items)
        for (u64 c = 0; c < it.mult; ++c) out.push_back(it.value);
    return out;
}

}  // namespace

TEST_CASE("degenerate smooth products are the whole window") {
    SmoothParams p{1.0 / 16, 1, 0, 1};  // exponent 1, dbar 0
    auto sp = enumerate_smooth_products(p);
    CHECK(sp.dbar == 0);
    CHECK(sp.window_lo == 4);
    CHECK(sp.window_hi == 16);
    std::vector<u64> expect;
    for (u64 h = 4; h <= 16; ++h) expect.push_back(h);
    CHECK(product_values(sp) == expect);
    for (const auto& prod : sp.products) CHECK(prod.factors == std::vector<u64>{prod.value});
}

TEST_CASE("two-factor smooth products match a double loop") {
    SmoothParams p{1.0 / 16, 2, 0, 1};
    auto sp = enumerate_smooth_products(p);
    CHECK(sp.dbar == 1);
    CHECK(sp.factor_lo == 2);
    CHECK(sp.factor_hi == 8);
    CHECK(sp.last_lo == 2);
    CHECK(sp.last_hi == 8);
    std::set<u64> expect;
    for (u64 a = 2; a <= 8; ++a)
        for (u64 b = 2; b <= 8; ++b)
            if (a * b >= 4 && a * b <= 16) expect.insert(a * b);
    CHECK(product_values(sp) == std::vector<u64>(expect.begin(), expect.end()));
    CHECK(product_values(sp) == std::vector<u64>{4, 6, 8, 9, 10, 12, 14, 15, 16});
    for (const auto& prod : sp.products) {
        if (prod.value == 12) CHECK(prod.factors == std::vector<u64>{2, 6});
        CHECK(product(prod.factors) == prod.value);
    }
}

TEST_CASE("smooth products respect their factor ranges") {
    for (int d : {2, 3, 4, 6}) {
        for (double lambda : {0.0, 0.5}) {
            SmoothParams p{1.0 / 64, d, lambda, 1 + lambda};
            auto sp = enumerate_smooth_products(p);
            REQUIRE_FALSE(sp.products.empty());
            for (const auto& prod : sp.products) {
                REQUIRE(prod.factors.size() == size_t(sp.dbar + 1));
                REQUIRE(product(prod.factors) == prod.value);
                for (int i = 0; i < sp.dbar; ++i) {
                    REQUIRE(prod.factors[size_t(i)] >= sp.factor_lo);
                    REQUIRE(prod.factors[size_t(i)] <= sp.factor_hi);
                    if (i > 0) REQUIRE(prod.factors[size_t(i - 1)] <= prod.factors[size_t(i)]);
                }
                REQUIRE(prod.factors.back() >= sp.last_lo);
                REQUIRE(prod.factors.back() <= sp.last_hi);
                REQUIRE(prod.value >= sp.window_lo);
                REQUIRE(prod.value <= sp.window_hi);
            }
        }
    }
}

TEST_CASE("most frequent table entry") {
    auto one = most_frequent_table_entry({5}, {2});
    CHECK(one.c == 3);
    CHECK(one.count == 1);
    auto two = most_frequent_table_entry({5, 6}, {2, 3});
    CHECK(two.c == 3);
    CHECK(two.count == 2);
    auto tie = most_frequent_table_entry({5, 6}, {5, 6});
    CHECK(tie.c == 0);
    CHECK(tie.count == 2);
}

TEST_CASE("most frequent table entry matches enumeration") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<i64> k(1 + rng() % 30), s(1 + rng() % 30);
        for (auto& x : k) x = i64(rng() % 60);
        for (auto& x : s) x = i64(rng() % 60);
        std::map<i64, u64> count;
        for (i64 a : k)
            for (i64 b : s) ++count[a - b];
        i64 best_c = 0;
        u64 best = 0;
        for (auto [c, n] : count)
            if (n > best) best = n, best_c = c;
        auto got = most_frequent_table_entry(k, s);
        REQUIRE(got.count == best);
        REQUIRE(got.c == best_c);
    }
}

TEST_CASE("grid exponents bracket their value") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 1000; ++trial) {
        const double gamma = 1.0 / double(4 + rng() % 200);
        const double x = 1 + double(rng() % 1000000);
        const i64 c = grid_exponent(x, gamma);
        REQUIRE(std::pow(1.0L + gamma, (long double)c) <= (long double)x);
        REQUIRE(std::pow(1.0L + gamma, (long double)(c + 1)) > (long double)x);
    }
}

TEST_CASE("rounding a single value and repeated copies") {
    SmoothParams p{1.0 / 16, 2, 0, 1};
    auto one = round_to_semismooth(std::vector<double>{300}, p);
    REQUIRE(one.values.size() == 1);
    CHECK(one.delta.size() == 1);
    CHECK(one.delta[0] == one.values[0].c);
    CHECK(std::fabs(300 - one.values[0].rounded) <= p.gamma() * 300);

    auto copies = round_to_semismooth(MultiSet::from_items({300, 300, 300}), p);
    CHECK(copies.values.size() == 1);  // copies share one rounded item
    CHECK(copies.values[0].rounded == one.values[0].rounded);
}

TEST_CASE("rounding audit on random windows") {
    std::mt19937_64 rng(23);
    for (double lambda : {0.0, 0.5, 1.0}) {
        SmoothParams p{1.0 / 16, 2, lambda, 1 + lambda};
        const double lo = std::pow(p.eps, -(2 + lambda));
        std::vector<double> xs;
        for (int i = 0; i < 64; ++i) xs.push_back(std::floor(lo + double(rng() % u64(lo + 1))));
        auto rr = round_to_semismooth(xs, p);
        const std::set<double> distinct(xs.begin(), xs.end());
        CHECK(rr.delta.size() <= distinct.size());
        for (size_t i = 0; i < xs.size(); ++i) {
            const auto& v = rr.values[i];
            REQUIRE(v.x == xs[i]);
            const long double h = (long double)rr.products.products[v.product].value;
            const long double rounded = std::pow(1.0L + (long double)rr.gamma, (long double)v.c) * h;
            REQUIRE(std::fabs((long double)xs[i] - rounded) <= (long double)rr.gamma * xs[i] * (1 + 1e-12L));
            REQUIRE(std::binary_search(rr.delta.begin(), rr.delta.end(), v.c));
        }
    }
}

TEST_CASE("rounding rejects values outside its window") {
    SmoothParams p{1.0 / 16, 2, 0, 1};
    CHECK_THROWS_AS(round_to_semismooth(std::vector<double>{100}, p), InputError);
    CHECK_NOTHROW(round_to_semismooth(std::vector<double>{100}, p, false));
}

TEST_CASE("approximate smooth subset sums") {
    SmoothParams p{1.0 / 16, 2, 0, 1};
    auto sp = enumerate_smooth_products(p);

    auto single = smooth_subset_sums_approx({SmoothItem{0, 12, {2, 6}, 1}}, 1.0 / 16, 1);
    CHECK(single.values() == std::vector<double>{0, 12});

    std::mt19937_64 rng(31);
    for (int k : {0, 1, 2}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto items = random_smooth_items(rng, sp, 1 + rng() % 12);
            auto r = smooth_subset_sums_approx(items, 1.0 / 16, std::min(k, 2));
            auto exact = ref::subset_sums(expand(items));
            ApproxSet a = r.apx();
            auto rep = verify_apx_set(a.values, ref::as_double(exact), a.r, a.u, a.err_add);
            INFO(rep.message);
            REQUIRE(rep.ok);
            for (size_t i = 0; i < r.size(); ++i)
                REQUIRE(std::fabs(witness_total(r.witness(i)) - r.values()[i]) <= r.sound + 1e-9);
        }
    }
}

TEST_CASE("capped exact smooth subset sums") {
    SmoothParams p{1.0 / 64, 3, 0, 1};
    auto sp = enumerate_smooth_products(p);
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        auto items = random_smooth_items(rng, sp, 1 + rng() % 10);
        auto all = expand(items);
        u64 total = 0;
        for (u64 v : all) total += v;
        auto exact = ref::subset_sums(all);
        const int depth = int(items[0].factors.size());
        for (u64 omega : {total, total / 3, u64(0)}) {
            auto r = smooth_capped_subset_sums_exact(items, omega, int(rng() % u64(depth + 1)));
            std::set<u64> got;
            for (u64 v : r.int_values()) got.insert(v);
            REQUIRE(got == ref::capped(exact, omega));
            for (size_t i = 0; i < r.size(); ++i) REQUIRE(witness_total(r.witness(i)) == r.values()[i]);
        }
    }
}
