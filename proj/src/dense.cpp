#include "subsum/dense.hpp"

#include <algorithm>
#include <cmath>

namespace subsum {

double dense_threshold(u64 sigma, u64 l, size_t m, const DenseConfig& cfg) {
    if (m == 0 || l == 0) return 0;
    return cfg.c_threshold * double(sigma) * std::sqrt(double(l)) * std::log2(double(l)) / double(m);
}

double dense_gate_bound(u64 l, const DenseConfig& cfg) {
    if (l == 0) return 0;
    return cfg.c_gate * std::sqrt(double(l)) * std::log2(double(l));
}

DenseStructure build_dense_structure(const std::vector<u64>& z, std::optional<u64> l,
                                     const DenseConfig& cfg, std::optional<std::vector<i64>> ids) {
    if (z.empty()) throw InputError("dense structure needs a nonempty set");
    DenseStructure s;
    std::vector<size_t> order(z.size());
    for (size_t i = 0; i < z.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return z[a] < z[b]; });
    if (ids && ids->size() != z.size()) throw InputError("ids must parallel the set");
    for (size_t i : order) {
        if (z[i] == 0) throw InputError("dense set items must be positive");
        if (!s.z.empty() && s.z.back() == z[i]) throw InputError("dense set items must be distinct");
        s.z.push_back(z[i]);
        s.ids.push_back(ids ? (*ids)[i] : i64(z[i]));
        s.sigma = checked_add(s.sigma, z[i]);
    }
    s.l = l ? *l : s.z.back();
    if (s.z.back() > s.l) throw InputError("dense set items must not exceed l");
    s.threshold = dense_threshold(s.sigma, s.l, s.z.size(), cfg);
    s.dense = double(s.z.size()) > dense_gate_bound(s.l, cfg);
    const double hi = double(s.sigma) - s.threshold;
    if (hi <= s.threshold) {
        s.sums = leaf_from_set({0.0}, -1);
        return s;
    }
    std::vector<ItemSpec> specs;
    for (size_t i = 0; i < s.z.size(); ++i) specs.push_back(ItemSpec{s.ids[i], s.z[i], 1});
    s.sums = subset_sums_exact_items(specs, u64(std::floor(hi)));
    return s;
}

DenseAnswer query_max_below(const DenseStructure& s, double t) {
    if (!s.in_range(t)) throw InputError("query outside (L, sigma - L)");
    long idx = s.sums.index_at_most(t);
    DenseAnswer a;
    a.value = u64(s.sums.values()[idx]);
    a.witness = s.sums.witness(size_t(idx));
    for (const Pick& p : a.witness)
        for (u64 c = 0; c < p.count; ++c) a.subset.push_back(u64(p.unit));
    std::sort(a.subset.begin(), a.subset.end());
    return a;
}

}  // namespace subsum
