#pragma once

// Independent reference computations shared by the test suites. Everything
// here is deliberately naive so that it can serve as ground truth.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "subsum/core.hpp"
#include "subsum/sumset.hpp"

namespace ref {

using subsum::u64;

// All subset sums of a list (with repetition) by set-based doubling.
inline std::set<u64> subset_sums(const std::vector<u64>& items) {
    std::set<u64> s{0};
    for (u64 x : items) {
        std::set<u64> next = s;
        for (u64 v : s) next.insert(v + x);
        s.swap(next);
    }
    return s;
}

// Sumset of sets, each implicitly containing 0.
inline std::set<u64> sumset(const std::vector<std::vector<u64>>& sets) {
    std::set<u64> s{0};
    for (const auto& x : sets) {
        std::set<u64> next = s;
        for (u64 v : s)
            for (u64 y : x) next.insert(v + y);
        s.swap(next);
    }
    return s;
}

inline std::set<u64> capped(const std::set<u64>& s, u64 cap) {
    return std::set<u64>(s.begin(), s.upper_bound(cap));
}

// max subset sum <= t via a boolean table.
inline u64 best_below(const std::vector<u64>& items, u64 t) {
    std::vector<char> ok(t + 1, 0);
    ok[0] = 1;
    for (u64 x : items)
        for (u64 v = t; v + 1 > x; --v)
            if (ok[v - x]) ok[v] = 1;
    for (u64 v = t + 1; v-- > 0;)
        if (ok[v]) return v;
    return 0;
}

// max unbounded combination <= t.
inline u64 best_unbounded(const std::vector<u64>& items, u64 t) {
    std::vector<char> ok(t + 1, 0);
    ok[0] = 1;
    for (u64 v = 1; v <= t; ++v)
        for (u64 x : items)
            if (x <= v && ok[v - x]) {
                ok[v] = 1;
                break;
            }
    for (u64 v = t + 1; v-- > 0;)
        if (ok[v]) return v;
    return 0;
}

inline std::vector<double> as_double(const std::set<u64>& s) {
    return std::vector<double>(s.begin(), s.end());
}

inline std::set<u64> as_set(const std::vector<u64>& v) { return std::set<u64>(v.begin(), v.end()); }

inline std::vector<u64> random_items(std::mt19937_64& rng, size_t n, u64 lo, u64 hi) {
    std::vector<u64> out(n);
    for (auto& x : out) x = lo + rng() % (hi - lo + 1);
    return out;
}

inline std::vector<u64> random_set(std::mt19937_64& rng, size_t n, u64 lo, u64 hi) {
    std::set<u64> s;
    while (s.size() < n && s.size() < hi - lo + 1) s.insert(lo + rng() % (hi - lo + 1));
    return std::vector<u64>(s.begin(), s.end());
}

// True when a witness only draws on the given (item -> available copies) pool.
inline bool draws_from(const subsum::Witness& w, const std::vector<std::pair<subsum::i64, u64>>& pool) {
    std::vector<std::pair<subsum::i64, u64>> used;
    for (const auto& p : w) {
        auto it = std::find_if(used.begin(), used.end(), [&](auto& e) { return e.first == p.item; });
        if (it == used.end()) used.emplace_back(p.item, p.count);
        else it->second += p.count;
    }
    for (auto [item, count] : used) {
        auto it = std::find_if(pool.begin(), pool.end(), [&](auto& e) { return e.first == item; });
        if (it == pool.end() || it->second < count) return false;
    }
    return true;
}

}  // namespace ref
