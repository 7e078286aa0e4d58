#include "subsum/oracle.hpp"

#include <algorithm>
#include <cstring>

namespace subsum {

namespace {

void check_budget(u64 n, u64 t, u64 budget) {
    unsigned __int128 cells = (unsigned __int128)n * (t + 1);
    if (cells > budget || t > (u64(1) << 28))
        throw BudgetError("exact dynamic program exceeds its budget");
}

}  // namespace

ExactSolution exact_subset_sum_dp(const MultiSet& x, u64 t, u64 budget) {
    ExactSolution sol;
    std::vector<u64> items;
    for (auto [v, c] : x.counts()) {
        if (v > t) break;
        for (u64 i = 0; i < c; ++i) items.push_back(v);
    }
    if (items.empty() || t == 0) return sol;
    check_budget(items.size(), t, budget);
    // Word-parallel reachability; first[s] records the item that first reached s,
    // which is enough to walk a witness back from any reachable sum.
    const size_t words = size_t(t / 64 + 1);
    std::vector<u64> reach(words, 0), shifted(words);
    reach[0] = 1;
    std::vector<std::int32_t> first(t + 1, -1);
    for (size_t i = 0; i < items.size(); ++i) {
        const u64 x_i = items[i];
        const size_t ws = size_t(x_i / 64), bs = size_t(x_i % 64);
        std::fill(shifted.begin(), shifted.end(), 0);
        for (size_t w = words; w-- > ws;) {
            u64 v = reach[w - ws] << bs;
            if (bs && w - ws > 0) v |= reach[w - ws - 1] >> (64 - bs);
            shifted[w] = v;
        }
        for (size_t w = 0; w < words; ++w) {
            u64 fresh = shifted[w] & ~reach[w];
            if (!fresh) continue;
            reach[w] |= fresh;
            while (fresh) {
                u64 s = u64(w) * 64 + u64(__builtin_ctzll(fresh));
                fresh &= fresh - 1;
                if (s <= t) first[s] = std::int32_t(i);
            }
        }
    }
    u64 best = t;
    while (!((reach[best / 64] >> (best % 64)) & 1)) --best;
    sol.value = best;
    for (u64 s = best; s > 0;) {
        u64 v = items[size_t(first[s])];
        sol.items.push_back(v);
        s -= v;
    }
    std::sort(sol.items.begin(), sol.items.end());
    return sol;
}

ExactSolution exact_unbounded_dp(const std::vector<u64>& x, u64 t, u64 budget) {
    ExactSolution sol;
    std::vector<u64> items;
    for (u64 v : x) {
        if (v > 0 && v <= t) items.push_back(v);
    }
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    if (items.empty() || t == 0) return sol;
    check_budget(items.size(), t, budget);
    std::vector<std::int32_t> via(t + 1, -1);
    std::vector<std::uint8_t> reach(t + 1, 0);
    reach[0] = 1;
    for (size_t i = 0; i < items.size(); ++i) {
        const u64 v = items[i];
        for (u64 s = v; s <= t; ++s)
            if (!reach[s] && reach[s - v]) {
                reach[s] = 1;
                via[s] = std::int32_t(i);
            }
    }
    u64 best = t;
    while (!reach[best]) --best;
    sol.value = best;
    for (u64 s = best; s > 0;) {
        u64 v = items[size_t(via[s])];
        sol.multiplicity[v] += 1;
        s -= v;
    }
    return sol;
}

std::vector<u64> brute_force_subset_sums(const std::vector<u64>& x) {
    if (x.size() > 24) throw InputError("brute force is limited to 24 items");
    std::vector<u64> sums(size_t(1) << x.size(), 0);
    for (size_t i = 0; i < x.size(); ++i) {
        const size_t half = size_t(1) << i;
        for (size_t m = 0; m < half; ++m) sums[half + m] = checked_add(sums[m], x[i]);
    }
    std::sort(sums.begin(), sums.end());
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    return sums;
}

}  // namespace subsum
