#include "subsum/sumset.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "subsum/convolution.hpp"

namespace subsum {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Longest indicator array an exact engine may allocate.
constexpr u64 kMaxIndicator = u64(1) << 30;

// Picks keyed by (item, unit): one item may appear at several scales.
using Acc = std::map<std::pair<i64, double>, u64>;

void add_pick(Acc& acc, const Pick& p, double scale) {
    acc[{p.item, p.unit * scale}] += p.count;
}

void collect(const Node& n, int idx, double scale, Acc& acc) {
    if (idx < 0) return;
    switch (n.kind) {
        case NodeKind::Leaf:
            for (const Pick& p : n.bundles[idx]) add_pick(acc, p, scale);
            return;
        case NodeKind::ExactMerge: {
            const double c = n.values[idx];
            const auto& rv = n.right->values;
            auto right_index = [&](double rem) -> int {
                if (rem == 0) return -1;
                auto it = std::lower_bound(rv.begin(), rv.end(), rem);
                if (it != rv.end() && *it == rem) return int(it - rv.begin());
                return -2;
            };
            int ri = right_index(c);
            if (ri != -2) {
                collect(*n.right, ri, scale, acc);
                return;
            }
            const auto& lv = n.left->values;
            for (size_t i = 0; i < lv.size() && lv[i] <= c; ++i) {
                ri = right_index(c - lv[i]);
                if (ri != -2) {
                    collect(*n.left, int(i), scale, acc);
                    collect(*n.right, ri, scale, acc);
                    return;
                }
            }
            throw std::logic_error("exact backtrack failed");
        }
        case NodeKind::ApproxMerge: {
            const i64 s = n.keys[idx];
            for (auto [k, li] : n.left_rep) {
                if (k > s) break;
                auto it = std::lower_bound(n.right_rep.begin(), n.right_rep.end(),
                                           std::make_pair(s - k, std::numeric_limits<int>::min()));
                if (it != n.right_rep.end() && it->first == s - k) {
                    collect(*n.left, li, scale, acc);
                    collect(*n.right, it->second, scale, acc);
                    return;
                }
            }
            throw std::logic_error("approximate backtrack failed");
        }
        case NodeKind::Select: {
            auto [src, i] = n.origin[idx];
            collect(*n.sources[src], i, scale * n.factors[src], acc);
            return;
        }
        case NodeKind::Complement: {
            Acc sub;
            collect(*n.sources[0], n.origin[idx].second, 1.0, sub);
            std::map<i64, u64> used_by_item;
            for (auto& [key, count] : sub) used_by_item[key.first] += count;
            for (const Pick& p : n.universe) {
                const u64 used = used_by_item.count(p.item) ? used_by_item[p.item] : 0;
                if (used > p.count) throw std::logic_error("complement witness exceeds universe");
                if (used < p.count) add_pick(acc, Pick{p.item, p.unit, p.count - used}, scale);
            }
            return;
        }
    }
}

std::vector<double> to_double(const std::vector<u64>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (u64 x : v) {
        if (x > kMaxExactInt) throw InputError("integer exceeds 2^53");
        out.push_back(double(x));
    }
    return out;
}

u64 as_index(double v) {
    if (v < 0 || v != std::floor(v) || v > double(kMaxExactInt))
        throw std::logic_error("exact engine received a non-integer value");
    return u64(v);
}

std::vector<std::uint8_t> indicator(const Node& n, u64 limit) {
    u64 mx = 0;
    for (double v : n.values) {
        u64 x = as_index(v);
        if (x <= limit) mx = std::max(mx, x);
    }
    if (mx >= kMaxIndicator) throw BudgetError("exact sumset exceeds the memory budget");
    std::vector<std::uint8_t> arr(mx + 1, 0);
    arr[0] = 1;
    for (double v : n.values) {
        u64 x = u64(v);
        if (x <= limit) arr[x] = 1;
    }
    return arr;
}

SumsetResult exact_pair(const SumsetResult& a, const SumsetResult& b, std::optional<u64> cap) {
    const u64 limit = cap ? *cap : ~u64(0);
    auto ia = indicator(*a.root, limit);
    auto ib = indicator(*b.root, limit);
    auto conv = bool_convolve(ia, ib);
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::ExactMerge;
    node->left = a.root;
    node->right = b.root;
    for (size_t s = 0; s < conv.size(); ++s) {
        if (!conv[s]) continue;
        if (cap && s > *cap) break;
        node->values.push_back(double(s));
    }
    SumsetResult out;
    out.root = node;
    out.u = cap ? double(*cap) : a.u + b.u;
    out.cap = cap ? std::optional<double>(double(*cap)) : std::nullopt;
    return out;
}

// Combines parts pairwise layer by layer; an odd part is carried upward
// unchanged (equivalent to merging with the neutral set {0}).
SumsetResult merge_tree(std::vector<SumsetResult> parts,
                        const std::function<SumsetResult(const SumsetResult&, const SumsetResult&)>& pair) {
    if (parts.empty()) return leaf_from_set({0.0}, -1);
    while (parts.size() > 1) {
        std::vector<SumsetResult> next;
        next.reserve((parts.size() + 1) / 2);
        for (size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(pair(parts[i], parts[i + 1]));
        if (parts.size() % 2) next.push_back(parts.back());
        parts = std::move(next);
    }
    return parts[0];
}

std::vector<std::pair<i64, int>> bucket_reps(const Node& n, size_t count, double w) {
    std::vector<std::pair<i64, int>> rep;
    rep.emplace_back(0, -1);
    for (size_t i = 0; i < count; ++i) {
        double v = n.values[i];
        if (v <= 0) continue;
        i64 k = i64(std::floor(v / w));
        if (k == 0) continue;
        if (rep.back().first != k) rep.emplace_back(k, int(i));
    }
    return rep;
}

size_t count_at_most(const std::vector<double>& v, double bound) {
    return size_t(std::upper_bound(v.begin(), v.end(), bound) - v.begin());
}

SumsetResult make_select(std::vector<NodePtr> sources, std::vector<double> factors,
                         std::vector<std::pair<int, int>> origin) {
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::Select;
    node->sources = std::move(sources);
    node->factors = std::move(factors);
    node->origin = std::move(origin);
    node->values.reserve(node->origin.size());
    for (auto [s, i] : node->origin)
        node->values.push_back(node->factors[s] * node->sources[s]->values[i]);
    SumsetResult out;
    out.root = node;
    return out;
}

}  // namespace

double witness_total(const Witness& w) {
    double s = 0;
    for (const Pick& p : w) s += p.unit * double(p.count);
    return s;
}

const std::vector<double>& SumsetResult::values() const { return root->values; }

std::vector<u64> SumsetResult::int_values() const {
    std::vector<u64> out;
    out.reserve(size());
    for (double v : values()) out.push_back(as_index(v));
    return out;
}

ApproxSet SumsetResult::apx() const {
    ApproxSet s;
    s.values = values();
    s.u = u;
    const double vmax = s.values.empty() ? 0 : s.values.back();
    const double own = std::max(0.0, std::max(comp, sound) - err_in);
    if (u > 0) {
        s.r = std::max({own, vmax - u, 0.0}) / u;
        s.err_add = err_in;
    } else {
        s.r = 0;
        s.err_add = std::max(comp, sound);
    }
    return s;
}

Witness SumsetResult::witness(size_t index) const {
    if (index >= size()) throw InputError("witness index out of range");
    Acc acc;
    collect(*root, int(index), 1.0, acc);
    Witness w;
    w.reserve(acc.size());
    for (auto& [key, count] : acc)
        if (count) w.push_back(Pick{key.first, key.second, count});
    return w;
}

Witness SumsetResult::witness_of(double value) const {
    const auto& v = values();
    auto it = std::lower_bound(v.begin(), v.end(), value);
    if (it == v.end() || *it != value) throw InputError("value is not stored in the set");
    return witness(size_t(it - v.begin()));
}

long SumsetResult::index_at_most(double bound) const {
    return long(count_at_most(values(), bound)) - 1;
}

std::vector<double> choice_vector(const Witness& w, size_t ell) {
    std::vector<double> out(ell, 0.0);
    for (const Pick& p : w)
        if (p.item >= 0 && size_t(p.item) < ell) out[p.item] += p.unit * double(p.count);
    return out;
}

SumsetResult leaf_from_set(const std::vector<double>& values, i64 tag) {
    std::vector<double> v = sorted_unique(values);
    std::vector<Witness> bundles;
    bundles.reserve(v.size());
    for (double x : v) {
        if (x < 0) throw InputError("sets must be nonnegative");
        bundles.push_back(x == 0 ? Witness{} : Witness{Pick{tag, x, 1}});
    }
    return leaf_with_bundles(std::move(v), std::move(bundles));
}

SumsetResult leaf_with_bundles(std::vector<double> values, std::vector<Witness> bundles) {
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::Leaf;
    node->values = std::move(values);
    node->bundles = std::move(bundles);
    SumsetResult out;
    out.u = node->values.empty() ? 0 : node->values.back();
    out.root = node;
    return out;
}

// ---------------------------------------------------------------- exact

SumsetResult merge_exact(const std::vector<SumsetResult>& parts, std::optional<u64> cap) {
    if (parts.size() == 1 && !cap) return parts[0];
    std::vector<SumsetResult> p = parts;
    if (parts.size() == 1) p.push_back(leaf_from_set({0.0}, -1));
    return merge_tree(std::move(p), [&](const SumsetResult& a, const SumsetResult& b) {
        return exact_pair(a, b, cap);
    });
}

SumsetResult sumset_pair_exact(const std::vector<u64>& x1, const std::vector<u64>& x2) {
    return sumset_many_exact({x1, x2});
}

SumsetResult sumset_many_exact(const std::vector<std::vector<u64>>& sets) {
    std::vector<SumsetResult> leaves;
    for (size_t i = 0; i < sets.size(); ++i) leaves.push_back(leaf_from_set(to_double(sets[i]), i64(i)));
    if (leaves.empty()) return leaf_from_set({0.0}, -1);
    leaves.push_back(leaf_from_set({0.0}, -1));  // makes the result contain 0 even for l = 1
    auto out = merge_exact(leaves, std::nullopt);
    out.u = out.values().back();
    return out;
}

SumsetResult capped_sumset_many(const std::vector<std::vector<u64>>& sets, u64 cap) {
    std::vector<SumsetResult> leaves;
    for (size_t i = 0; i < sets.size(); ++i) leaves.push_back(leaf_from_set(to_double(sets[i]), i64(i)));
    leaves.push_back(leaf_from_set({0.0}, -1));
    return merge_exact(leaves, cap);
}

SumsetResult subset_sums_exact_items(const std::vector<ItemSpec>& items, std::optional<u64> cap) {
    std::vector<SumsetResult> leaves;
    for (const ItemSpec& it : items) {
        if (it.value == 0) continue;
        if (it.value > kMaxExactInt) throw InputError("integer exceeds 2^53");
        std::vector<double> vals{0.0};
        std::vector<Witness> bundles{Witness{}};
        for (u64 j = 1; j <= it.mult; ++j) {
            u64 v = checked_mul(it.value, j);
            if (cap && v > *cap) break;
            vals.push_back(double(v));
            bundles.push_back(Witness{Pick{it.item, double(it.value), j}});
        }
        leaves.push_back(leaf_with_bundles(std::move(vals), std::move(bundles)));
    }
    leaves.push_back(leaf_from_set({0.0}, -1));
    auto out = merge_exact(leaves, cap);
    if (!cap) out.u = out.values().back();
    return out;
}

SumsetResult subset_sums_exact(const MultiSet& x) {
    std::vector<ItemSpec> items;
    for (auto [v, c] : x.counts()) items.push_back(ItemSpec{i64(v), v, c});
    return subset_sums_exact_items(items);
}

SumsetResult subset_sums_exact(const MultiSet& x, u64 cap) {
    std::vector<ItemSpec> items;
    for (auto [v, c] : x.counts()) items.push_back(ItemSpec{i64(v), v, c});
    return subset_sums_exact_items(items, cap);
}

// ---------------------------------------------------------------- approximate

SumsetResult approx_pair(const SumsetResult& a, const SumsetResult& b, double eps_width,
                         double filter_a, double filter_b, double clip) {
    const Node& na = *a.root;
    const Node& nb = *b.root;
    const size_t ca = count_at_most(na.values, filter_a);
    const size_t cb = count_at_most(nb.values, filter_b);
    const double ma = ca ? std::max(0.0, na.values[ca - 1]) : 0.0;
    const double mb = cb ? std::max(0.0, nb.values[cb - 1]) : 0.0;
    const double sigma = ma + mb;

    auto node = std::make_shared<Node>();
    node->kind = NodeKind::ApproxMerge;
    node->left = a.root;
    node->right = b.root;
    SumsetResult out;
    out.root = node;
    out.err_in = a.err_in + b.err_in;
    if (sigma <= 0) {
        node->values = {0.0};
        node->keys = {0};
        node->left_rep = {{0, -1}};
        node->right_rep = {{0, -1}};
        out.comp = a.comp + b.comp;
        out.sound = a.sound + b.sound;
        return out;
    }
    const double w = eps_width * sigma / 2;
    node->left_rep = bucket_reps(na, ca, w);
    node->right_rep = bucket_reps(nb, cb, w);
    std::vector<std::uint8_t> ia(node->left_rep.back().first + 1, 0), ib(node->right_rep.back().first + 1, 0);
    for (auto& kv : node->left_rep) ia[kv.first] = 1;
    for (auto& kv : node->right_rep) ib[kv.first] = 1;
    auto conv = bool_convolve(ia, ib);
    for (size_t s = 0; s < conv.size(); ++s) {
        if (!conv[s]) continue;
        double v = w * double(s);
        if (v > clip) break;
        node->keys.push_back(i64(s));
        node->values.push_back(v);
    }
    // A floor in each operand loses less than one width.
    out.comp = 2 * w + a.comp + b.comp;
    out.sound = 2 * w + a.sound + b.sound;
    return out;
}

SumsetResult sumset_pair_approx(const std::vector<double>& b1, const std::vector<double>& b2,
                                double eps) {
    return sumset_many_approx({b1, b2}, eps);
}

SumsetResult merge_apx_subset_sums(const std::vector<SumsetResult>& parts, double eps) {
    if (!(eps > 0)) throw InputError("eps must be positive");
    double u = 0;
    for (const auto& p : parts) u += p.u;
    if (parts.size() == 1) return parts[0];
    auto out = merge_tree(parts, [&](const SumsetResult& a, const SumsetResult& b) {
        auto r = approx_pair(a, b, eps, kInf, kInf, kInf);
        r.u = a.u + b.u;
        return r;
    });
    out.u = u;
    return out;
}

SumsetResult sumset_many_approx(const std::vector<std::vector<double>>& sets, double eps) {
    std::vector<SumsetResult> leaves;
    for (size_t i = 0; i < sets.size(); ++i) leaves.push_back(leaf_from_set(sets[i], i64(i)));
    if (leaves.size() == 1) leaves.push_back(leaf_from_set({0.0}, -1));
    return merge_apx_subset_sums(leaves, eps);
}

SumsetResult merge_capped_apx_subset_sums(const std::vector<SumsetResult>& parts, double eps,
                                          double omega) {
    if (!(eps > 0)) throw InputError("eps must be positive");
    if (!(omega >= 0)) throw InputError("cap must be nonnegative");
    std::vector<SumsetResult> p = parts;
    if (p.size() == 1) p.push_back(leaf_from_set({0.0}, -1));
    auto pair = [&](const SumsetResult& a, const SumsetResult& b) {
        // A child value can exceed omega by its completeness budget while
        // still approximating a sum <= omega, so filters grow with budgets.
        auto r = approx_pair(a, b, eps / 2, omega + a.comp, omega + b.comp, kInf);
        r = clip_result(r, omega + r.comp);
        r.u = omega;
        r.cap = omega;
        return r;
    };
    auto out = merge_tree(std::move(p), pair);
    out.u = omega;
    out.cap = omega;
    return out;
}

SumsetResult capped_sumset_pair_approx(const std::vector<double>& b1,
                                       const std::vector<double>& b2, double eps,
                                       double omega) {
    return capped_sumset_many_approx({b1, b2}, eps, omega);
}

SumsetResult capped_sumset_many_approx(const std::vector<std::vector<double>>& sets, double eps,
                                       double omega) {
    std::vector<SumsetResult> leaves;
    for (size_t i = 0; i < sets.size(); ++i) leaves.push_back(leaf_from_set(sets[i], i64(i)));
    return merge_capped_apx_subset_sums(leaves, eps, omega);
}

// ---------------------------------------------------------------- structure

SumsetResult scale_result(const SumsetResult& x, double factor) {
    if (!(factor > 0)) throw InputError("scale factor must be positive");
    std::vector<std::pair<int, int>> origin(x.size());
    for (size_t i = 0; i < origin.size(); ++i) origin[i] = {0, int(i)};
    auto out = make_select({x.root}, {factor}, std::move(origin));
    out.comp = x.comp * factor;
    out.sound = x.sound * factor;
    out.u = x.u * factor;
    out.err_in = x.err_in * factor;
    if (x.cap) out.cap = *x.cap * factor;
    return out;
}

SumsetResult clip_result(const SumsetResult& x, double bound) {
    const size_t n = count_at_most(x.values(), bound);
    if (n == x.size()) return x;
    std::vector<std::pair<int, int>> origin(n);
    for (size_t i = 0; i < n; ++i) origin[i] = {0, int(i)};
    auto out = make_select({x.root}, {1.0}, std::move(origin));
    out.comp = x.comp;
    out.sound = x.sound;
    out.u = x.u;
    out.err_in = x.err_in;
    out.cap = x.cap;
    return out;
}

SumsetResult union_results(const std::vector<SumsetResult>& parts) {
    if (parts.empty()) return leaf_from_set({0.0}, -1);
    if (parts.size() == 1) return parts[0];
    std::vector<std::tuple<double, int, int>> all;
    std::vector<NodePtr> sources;
    for (size_t s = 0; s < parts.size(); ++s) {
        sources.push_back(parts[s].root);
        const auto& v = parts[s].values();
        for (size_t i = 0; i < v.size(); ++i) all.emplace_back(v[i], int(s), int(i));
    }
    std::sort(all.begin(), all.end());
    std::vector<std::pair<int, int>> origin;
    double last = -kInf;
    for (auto& [v, s, i] : all) {
        if (v == last) continue;
        last = v;
        origin.emplace_back(s, i);
    }
    auto out = make_select(std::move(sources), std::vector<double>(parts.size(), 1.0), std::move(origin));
    for (const auto& p : parts) {
        out.comp = std::max(out.comp, p.comp);
        out.sound = std::max(out.sound, p.sound);
        out.u = std::max(out.u, p.u);
        out.err_in = std::max(out.err_in, p.err_in);
    }
    return out;
}

SumsetResult bucket_extremes(const SumsetResult& x, double width) {
    if (!(width > 0)) return x;
    const auto& v = x.values();
    std::vector<std::pair<int, int>> origin;
    for (size_t i = 0; i < v.size(); ++i) {
        i64 k = i64(std::floor(v[i] / width));
        bool first = i == 0 || i64(std::floor(v[i - 1] / width)) != k;
        bool last = i + 1 == v.size() || i64(std::floor(v[i + 1] / width)) != k;
        if (first || last) origin.emplace_back(0, int(i));
    }
    auto out = make_select({x.root}, {1.0}, std::move(origin));
    out.comp = x.comp + width;
    out.sound = x.sound;
    out.u = x.u;
    out.err_in = x.err_in;
    out.cap = x.cap;
    return out;
}

SumsetResult complement_result(const SumsetResult& x, double total, Witness universe) {
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::Complement;
    node->sources = {x.root};
    node->factors = {1.0};
    node->total = total;
    node->universe = std::move(universe);
    const auto& v = x.values();
    for (size_t i = v.size(); i-- > 0;) {
        node->values.push_back(total - v[i]);
        node->origin.emplace_back(0, int(i));
    }
    SumsetResult out;
    out.root = node;
    out.comp = x.comp;
    out.sound = x.sound;
    out.u = total;
    out.err_in = x.err_in;
    return out;
}

}  // namespace subsum
