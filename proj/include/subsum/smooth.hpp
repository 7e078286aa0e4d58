#pragma once

#include <map>
#include <vector>

#include "subsum/core.hpp"
#include "subsum/sumset.hpp"

namespace subsum {

// Rounding regime: items live in [eps^-(2+lambda), 2 eps^-(2+lambda)] and are
// rounded with relative error gamma = eps^(2+lambda-alpha).
struct SmoothParams {
    double eps = 1.0 / 16.0;
    int d = 2;
    double lambda = 0;
    double alpha = 1;

    double exponent() const { return 2 + lambda - alpha; }
    double gamma() const;
    // dbar with exponent() in (dbar/d, (dbar+1)/d].
    int dbar() const;
    void validate() const;
};

struct SmoothProduct {
    u64 value = 0;
    std::vector<u64> factors;  // lexicographically smallest admissible factorisation
};

struct SmoothProducts {
    double gamma = 0;
    int dbar = 0;
    u64 window_lo = 0, window_hi = 0;  // integer window [1/(4 gamma), 1/gamma]
    u64 factor_lo = 0, factor_hi = 0;  // range of the first dbar factors
    u64 last_lo = 0, last_hi = 0;      // range of the final factor
    std::vector<SmoothProduct> products;  // ascending by value
};

SmoothProducts enumerate_smooth_products(const SmoothParams& p);

struct TableEntry {
    i64 c = 0;
    u64 count = 0;
};
// Most frequent difference k_i - s_v over the table of all pairs; ties are
// broken towards the smallest difference. k may contain repeats.
TableEntry most_frequent_table_entry(const std::vector<i64>& k, const std::vector<i64>& s);

struct RoundedValue {
    double x = 0;          // input value
    i64 c = 0;             // exponent of rho = (1+gamma)^c
    size_t product = 0;    // index into the product list
    double rounded = 0;    // (1+gamma)^c * H
};

struct RoundingResult {
    SmoothProducts products;
    double gamma = 0;
    std::vector<i64> delta;            // distinct exponents used, ascending
    std::vector<RoundedValue> values;  // same order as the input
    // Largest observed |x - rounded| / x.
    double worst_relative_error = 0;
};

// floor(log_{1+gamma} x) computed robustly.
i64 grid_exponent(double x, double gamma);
double grid_power(i64 c, double gamma);

// Rounds distinct values in the regime window to (1+gamma)^c * H with H a
// smooth product, using as few exponents c as the greedy table cover finds.
RoundingResult round_to_semismooth(const std::vector<double>& values, const SmoothParams& p,
                                   bool check_window = true);
RoundingResult round_to_semismooth(const MultiSet& x, const SmoothParams& p);

// An item of a smooth subset-sum instance: `value` equals the product of
// `factors` and occurs `mult` times.
struct SmoothItem {
    i64 id = 0;
    u64 value = 0;
    std::vector<u64> factors;
    u64 mult = 1;
};

// Approximate subset sums of smooth items: exact sums below the cut depth k,
// bucket extremes at the cut, approximate merging above it.
SumsetResult smooth_subset_sums_approx(const std::vector<SmoothItem>& items, double eps, int k);

// Exact S(A) intersected with [0, omega] using the same factor tree.
SumsetResult smooth_capped_subset_sums_exact(const std::vector<SmoothItem>& items, u64 omega,
                                             int k);

}  // namespace subsum
