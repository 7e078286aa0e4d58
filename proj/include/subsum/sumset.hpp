#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "subsum/core.hpp"

namespace subsum {

// One entry of a witness: `count` copies of item `item`, each worth `unit`
// in the coordinate frame of the set that produced the witness.
struct Pick {
    i64 item = 0;
    double unit = 0;
    u64 count = 0;
};
using Witness = std::vector<Pick>;  // sorted by (item, unit), one entry per pair

double witness_total(const Witness& w);

enum class NodeKind { Leaf, ExactMerge, ApproxMerge, Select, Complement };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// A layer of a witness tree. Every stored value can be traced back to a
// combination of leaf bundles through index tables (no closures).
struct Node {
    NodeKind kind = NodeKind::Leaf;
    std::vector<double> values;  // strictly increasing

    // Leaf: per value, the items that realise it.
    std::vector<Witness> bundles;

    // ExactMerge / ApproxMerge children (may be the same node).
    NodePtr left, right;

    // ApproxMerge: per value, the bucket-sum key; per child, sorted
    // (bucket key, representative child index) with index -1 meaning "empty".
    std::vector<i64> keys;
    std::vector<std::pair<i64, int>> left_rep, right_rep;

    // Select: per value, (source, index in source); values are
    // factors[source] * source value. Complement uses sources[0] only and
    // stores values total - source value, with witness universe \ child.
    std::vector<NodePtr> sources;
    std::vector<double> factors;
    std::vector<std::pair<int, int>> origin;
    double total = 0;
    Witness universe;
};

// A set of (approximate) sums with a backtracking oracle and error budgets.
//  comp  : every target sum a <= u has a stored value within comp;
//  sound : every stored value c has a witness whose total is within sound of c.
struct SumsetResult {
    NodePtr root;
    double comp = 0;
    double sound = 0;
    double u = 0;
    double err_in = 0;  // part of comp/sound inherited from approximate inputs
    std::optional<double> cap;

    const std::vector<double>& values() const;
    size_t size() const { return values().size(); }
    std::vector<u64> int_values() const;
    // (r, u, err_add) contract implied by the budgets.
    ApproxSet apx() const;
    Witness witness(size_t index) const;
    // Witness of a stored value; throws if the value is not stored.
    Witness witness_of(double value) const;
    // Index of the largest stored value <= bound, or -1.
    long index_at_most(double bound) const;
};

// Choice vector (x_1..x_l) recovered from a witness of a sumset over l sets.
std::vector<double> choice_vector(const Witness& w, size_t ell);

// Leaf node helpers.
SumsetResult leaf_from_set(const std::vector<double>& values, i64 tag);
SumsetResult leaf_with_bundles(std::vector<double> values, std::vector<Witness> bundles);

// ---- exact sumsets (integer-valued) ----
SumsetResult sumset_pair_exact(const std::vector<u64>& x1, const std::vector<u64>& x2);
SumsetResult sumset_many_exact(const std::vector<std::vector<u64>>& sets);
SumsetResult capped_sumset_many(const std::vector<std::vector<u64>>& sets, u64 cap);

struct ItemSpec {
    i64 item;
    u64 value;
    u64 mult;
};
SumsetResult subset_sums_exact(const MultiSet& x);
SumsetResult subset_sums_exact(const MultiSet& x, u64 cap);
SumsetResult subset_sums_exact_items(const std::vector<ItemSpec>& items,
                                     std::optional<u64> cap = std::nullopt);

// Exact merge of integer-valued results (tree fashion, optional cap).
SumsetResult merge_exact(const std::vector<SumsetResult>& parts, std::optional<u64> cap);

// ---- approximate sumsets ----
SumsetResult sumset_pair_approx(const std::vector<double>& b1, const std::vector<double>& b2,
                                double eps);
SumsetResult sumset_many_approx(const std::vector<std::vector<double>>& sets, double eps);
SumsetResult merge_apx_subset_sums(const std::vector<SumsetResult>& parts, double eps);

SumsetResult capped_sumset_pair_approx(const std::vector<double>& b1,
                                       const std::vector<double>& b2, double eps,
                                       double omega);
SumsetResult capped_sumset_many_approx(const std::vector<std::vector<double>>& sets, double eps,
                                       double omega);
SumsetResult merge_capped_apx_subset_sums(const std::vector<SumsetResult>& parts, double eps,
                                          double omega);

// Pairwise approximate merge of two results. Child values above their
// filter bound are discarded, buckets have width eps_width * sigma / 2 where
// sigma is the sum of the surviving maxima, and results above clip are
// dropped. Budgets accumulate additively.
SumsetResult approx_pair(const SumsetResult& a, const SumsetResult& b, double eps_width,
                         double filter_a, double filter_b, double clip);

// ---- structural helpers ----
SumsetResult scale_result(const SumsetResult& x, double factor);
SumsetResult clip_result(const SumsetResult& x, double bound);
SumsetResult union_results(const std::vector<SumsetResult>& parts);
// Keeps the minimum and maximum of each bucket [(k-1)w, kw).
SumsetResult bucket_extremes(const SumsetResult& x, double width);
// Values total - v with witnesses universe \ witness(v).
SumsetResult complement_result(const SumsetResult& x, double total, Witness universe);

}  // namespace subsum
