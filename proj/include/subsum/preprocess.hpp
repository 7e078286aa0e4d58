#pragma once

#include <optional>
#include <vector>

#include "subsum/core.hpp"
#include "subsum/smooth.hpp"

namespace subsum {

// ---- trivial gate ----
struct GateResult {
    bool solved = false;  // X_t itself is optimal
    MultiSet kept;        // X_t = X restricted to [0, t]
};
GateResult trivial_gate(const MultiSet& x, u64 t);

// ---- small-item packing ----
struct Bundle {
    u64 sum = 0;
    std::vector<size_t> members;  // indices into the input vector
};
// Greedy bundles of items below eps*t/4 with sums in [eps*t/4, eps*t/2);
// a final bundle below eps*t/4 is kept as is.
std::vector<Bundle> pack_small_items(const std::vector<u64>& small, double eps, u64 t);
bool is_small_item(u64 x, double eps, u64 t);

// ---- multiplicity reduction ----
struct ReducedElement {
    u64 value = 0;  // 2^p * base
    u64 base = 0;   // largest constituent value
    int p = 0;
    std::vector<i64> constituents;  // ids of the input copies it replaces; they sum to value
};
// Repeatedly replaces pairs of equal values by their double until every
// value has multiplicity at most 2; subset sums are preserved exactly.
std::vector<ReducedElement> reduce_copies(const std::vector<std::pair<u64, i64>>& copies);

struct ReduceResult {
    MultiSet b;
    std::vector<ReducedElement> elements;  // constituents index a.items()
};
ReduceResult reduce_multiset(const MultiSet& a);

// ---- bounded preprocessing ----
struct ZItem {
    u64 value = 0;
    std::vector<size_t> originals;  // indices into BoundedInstance::originals
};

struct GroupItem {
    i64 fid = 0;
    u64 h = 0;
    std::vector<u64> factors;
};

// Items beta * h with h from the smooth product list.
struct ItemGroup {
    int j = 0;
    int i = 1;
    i64 c = 0;
    int p = 0;
    double rho = 1;
    double beta = 1;
    double lambda = 0;
    bool residual = false;  // an exact item outside every rounding window
    std::vector<GroupItem> items;

    u64 sum_tilde() const;
    double sum() const { return beta * double(sum_tilde()); }
};

struct FItem {
    double value = 0;
    size_t group = 0;
    u64 h = 0;
    int p = 0;
    std::vector<size_t> zitems;
};

struct BoundedInstance {
    double eps = 0;
    int d = 0;
    u64 t = 0;
    double kappa = 0;  // scale factor 4 / (eps^3 t)
    double t_bar = 0;  // 4 / eps^3
    double t_hat = 0;  // (1 + eps) t_bar
    std::vector<u64> originals;
    std::vector<ZItem> z;
    std::vector<FItem> f;
    std::vector<ItemGroup> groups;
    double worst_rounding = 0;  // max relative rounding error observed
    size_t deltas = 0;          // total number of rounding exponents used

    // Original item indices behind a selection of F items.
    std::vector<size_t> back_map(const std::vector<i64>& fids) const;
};

BoundedInstance preprocess_bounded(const MultiSet& x, u64 t, double eps, int d);

// ---- unbounded preprocessing ----
struct UnboundedGateResult {
    bool solved = false;
    u64 item = 0;
    u64 copies = 0;
};
UnboundedGateResult unbounded_gate(const std::vector<u64>& x, u64 t, double eps);

struct UItem {
    u64 h = 0;
    u64 original = 0;  // an input item that rounds to rho * h
};

struct UGroup {
    int j = 0;
    i64 c = 0;
    double rho = 1;
    double lambda = 0;
    std::vector<UItem> items;  // ascending h
    u64 n = 0;                 // floor(t_hat / min value)
    u64 l = 0;                 // copies of each value
};

struct UnboundedInstance {
    double eps = 0;
    u64 t = 0;
    double unit = 0;   // eps^3 t: one scaled unit in original units
    double t_hat = 0;  // (1 + eps) / eps^3
    u64 thresh = 0;    // 2^(1 + pow(log2(1/eps) + 1))
    std::vector<u64> items;
    std::vector<UGroup> groups;
    double worst_rounding = 0;
};

u64 unbounded_threshold(double eps);
UnboundedInstance preprocess_unbounded(const std::vector<u64>& x, u64 t, double eps);

}  // namespace subsum
