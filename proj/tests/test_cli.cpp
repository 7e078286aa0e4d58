#include "doctest.h"
#include "helpers.hpp"
#include "subsum/instance.hpp"
#include "subsum/oracle.hpp"

using namespace subsum;

TEST_CASE("instance files round-trip byte for byte") {
    const std::string text =
        R"({"items":[3,"18014398509481985",7],"meta":{"note":"x"},"problem":"subset-sum","target":10})";
    Instance inst = parse_instance(text);
    CHECK(inst.items[1] == (u64(1) << 54) + 1);
    CHECK(*inst.target == 10);
    CHECK(serialize_instance(inst) == text);
    CHECK(serialize_instance(parse_instance(serialize_instance(inst))) == text);

    Instance part = parse_instance(R"({"problem":"partition","items":[1,2]})");
    CHECK_FALSE(part.target.has_value());
}

TEST_CASE("malformed instances are input errors") {
    CHECK_THROWS_AS(parse_instance("{not json"), InputError);
    CHECK_THROWS_AS(parse_instance("[]"), InputError);
    CHECK_THROWS_AS(parse_instance(R"({"problem":"knapsack","items":[1],"target":1})"), InputError);
    CHECK_THROWS_AS(parse_instance(R"({"problem":"subset-sum","items":[1]})"), InputError);
    CHECK_THROWS_AS(parse_instance(R"({"problem":"subset-sum","items":[-1],"target":1})"), InputError);
    CHECK_THROWS_AS(parse_instance(R"({"problem":"subset-sum","items":[1.5],"target":1})"), InputError);
    CHECK_THROWS_AS(parse_instance(R"({"problem":"subset-sum","items":[18014398509481985],"target":1})"),
                    InputError);
    CHECK_THROWS_AS(parse_instance(R"({"problem":"subset-sum","items":["99999999999999999999"],"target":1})"),
                    InputError);
}

TEST_CASE("generators are deterministic") {
    for (const char* kind : {"uniform", "dense-window", "smooth-heavy", "adversarial-sparse"}) {
        for (const char* problem : {"subset-sum", "partition", "unbounded"}) {
            auto spec = parse_gen_spec(std::string(kind) + ":n=40,seed=9,max=100000,t=0.3", problem);
            const std::string a = serialize_instance(gen_instance(spec));
            const std::string b = serialize_instance(gen_instance(spec));
            CHECK(a == b);
            Instance inst = parse_instance(a);
            CHECK(inst.meta["generator"] == kind);
            for (u64 v : inst.items) CHECK(v <= 100000);
            if (std::string(problem) != "unbounded") CHECK(inst.items.size() == 40);
        }
    }
    auto p = gen_instance(parse_gen_spec("uniform:n=10,seed=1", "partition"));
    u64 total = 0;
    for (u64 v : p.items) total += v;
    CHECK(*p.target == total / 2);
    CHECK(apply_t_rule("abs:77", 1000) == 77);
    CHECK(apply_t_rule("quarter", 1000) == 250);
    CHECK(apply_t_rule("0.3", 1000) == 300);
    CHECK_THROWS_AS(parse_gen_spec("uniform:n=1,bogus=2", "subset-sum"), InputError);
    CHECK_THROWS_AS(gen_instance(parse_gen_spec("nosuch:n=3", "subset-sum")), InputError);
}

TEST_CASE("exact dynamic programs") {
    CHECK(exact_subset_sum_dp(MultiSet::from_items({3, 34, 4, 12, 5, 2}), 9).value == 9);
    CHECK(exact_subset_sum_dp(MultiSet{}, 9).value == 0);
    CHECK(exact_subset_sum_dp(MultiSet::from_items({3, 4}), 0).value == 0);
    CHECK(exact_unbounded_dp({7}, 100).value == 98);
    CHECK(exact_unbounded_dp({1}, 5).value == 5);
    CHECK(exact_unbounded_dp({4, 6}, 9).value == 8);
    CHECK(exact_unbounded_dp({4, 6}, 9).multiplicity == std::map<u64, u64>{{4, 2}});
    CHECK_THROWS_AS(exact_subset_sum_dp(MultiSet::from_items({3, 4}), 1000, 10), BudgetError);

    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        auto items = ref::random_items(rng, rng() % 20, 1, 200);
        const u64 t = rng() % 1000;
        auto s = exact_subset_sum_dp(MultiSet::from_items(items), t);
        REQUIRE(s.value == ref::best_below(items, t));
        u64 sum = 0;
        for (u64 v : s.items) sum += v;
        REQUIRE(sum == s.value);
        REQUIRE(MultiSet::from_items(items).contains(MultiSet::from_items(s.items)));

        auto set = ref::random_set(rng, 1 + rng() % 5, 1, 60);
        auto u = exact_unbounded_dp(set, t);
        REQUIRE(u.value == ref::best_unbounded(set, t));
        u64 usum = 0;
        for (auto [v, c] : u.multiplicity) usum += v * c;
        REQUIRE(usum == u.value);
    }
}

TEST_CASE("brute force subset sums") {
    CHECK(brute_force_subset_sums({}) == std::vector<u64>{0});
    CHECK(brute_force_subset_sums({2, 2}) == std::vector<u64>{0, 2, 4});
    CHECK(brute_force_subset_sums({1, 3}) == std::vector<u64>{0, 1, 3, 4});
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto items = ref::random_items(rng, rng() % 12, 1, 50);
        auto s = ref::subset_sums(items);
        REQUIRE(brute_force_subset_sums(items) == std::vector<u64>(s.begin(), s.end()));
    }
}

TEST_CASE("verification flags violations") {
    Instance inst{"subset-sum", {3, 5, 9}, 10, json::object()};
    SolveResult good;
    good.value = 8;
    good.witness = {3, 5};
    CHECK(verify_against_opt(inst, good, 8).ok);
    SolveResult foreign = good;
    foreign.witness = {8};
    CHECK_FALSE(verify_against_opt(inst, foreign, 8).ok);
    SolveResult low;
    low.value = 3;
    low.witness = {3};
    low.delta = 0.1;
    CHECK_FALSE(verify_against_opt(inst, low, 8).ok);
}

TEST_CASE("result json carries the certificate and trace") {
    Instance inst = gen_instance(parse_gen_spec("uniform:n=30,seed=3,max=5000", "subset-sum"));
    auto r = solve_instance(inst, 0.05, 0, SolverOptions{});
    json j = result_to_json(r, false, true);
    CHECK(j["problem"] == "subset-sum");
    CHECK(j.contains("certificate"));
    CHECK(j["certificate"].contains("delta"));
    CHECK_FALSE(j.contains("times_ms"));
    CHECK(j["trace"]["groups"].size() == r.trace.size());
    CHECK(result_to_json(r, true).contains("times_ms"));
}
