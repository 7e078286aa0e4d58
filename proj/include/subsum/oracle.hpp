#pragma once

#include <map>
#include <vector>

#include "subsum/core.hpp"

namespace subsum {

// Default work budget (cells) for the exact dynamic programs.
constexpr u64 kDefaultDpBudget = u64(1) << 31;

struct ExactSolution {
    u64 value = 0;
    std::vector<u64> items;         // chosen items (bounded), ascending
    std::map<u64, u64> multiplicity;  // chosen copies (unbounded)
};

// max{ sum(Y) : Y subset of X, sum(Y) <= t } with a witness. Throws
// BudgetError when |X| * t exceeds the budget.
ExactSolution exact_subset_sum_dp(const MultiSet& x, u64 t, u64 budget = kDefaultDpBudget);

// Unbounded variant: any item may be used any number of times.
ExactSolution exact_unbounded_dp(const std::vector<u64>& x, u64 t, u64 budget = kDefaultDpBudget);

// All subset sums of a small multiset by enumeration (|X| <= 24).
std::vector<u64> brute_force_subset_sums(const std::vector<u64>& x);

}  // namespace subsum
