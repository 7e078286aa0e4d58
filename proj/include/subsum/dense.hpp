#pragma once

#include <optional>
#include <vector>

#include "subsum/core.hpp"
#include "subsum/sumset.hpp"

namespace subsum {

// Constants of the dense-set regime. The threshold is
//   L = c_threshold * sum(Z) * sqrt(l) * log2(l) / |Z|
// and Z counts as dense when |Z| > c_gate * sqrt(l) * log2(l).
struct DenseConfig {
    double c_threshold = 100;
    double c_gate = 1000;
};

struct DenseStructure {
    std::vector<u64> z;    // ascending, distinct
    std::vector<i64> ids;  // caller ids parallel to z
    u64 l = 0;
    u64 sigma = 0;
    double threshold = 0;  // L
    bool dense = false;
    SumsetResult sums;     // exact S(Z) restricted to [0, sigma - L]

    // Queries are answered for L < t < sigma - L.
    bool in_range(double t) const { return t > threshold && t < double(sigma) - threshold; }
};

// Threshold and gate bound of the dense regime.
double dense_threshold(u64 sigma, u64 l, size_t m, const DenseConfig& cfg);
double dense_gate_bound(u64 l, const DenseConfig& cfg);

DenseStructure build_dense_structure(const std::vector<u64>& z, std::optional<u64> l = std::nullopt,
                                     const DenseConfig& cfg = {},
                                     std::optional<std::vector<i64>> ids = std::nullopt);

struct DenseAnswer {
    u64 value = 0;         // max subset sum <= t
    std::vector<u64> subset;
    Witness witness;
};

// Max subset sum not exceeding t, with a witness subset.
DenseAnswer query_max_below(const DenseStructure& s, double t);

}  // namespace subsum
