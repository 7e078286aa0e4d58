#include "subsum/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace subsum {

GateResult trivial_gate(const MultiSet& x, u64 t) {
    GateResult g;
    for (auto [v, c] : x.counts()) {
        if (v > t) break;
        if (v > 0) g.kept.add(v, c);  // zeros never change a sum
    }
    g.solved = 2 * (long double)g.kept.total() < (long double)t;
    return g;
}

bool is_small_item(u64 x, double eps, u64 t) {
    return 4.0L * (long double)x < (long double)eps * (long double)t;
}

std::vector<Bundle> pack_small_items(const std::vector<u64>& small, double eps, u64 t) {
    const long double lo = (long double)eps * (long double)t / 4;
    std::vector<Bundle> out;
    Bundle cur;
    for (size_t i = 0; i < small.size(); ++i) {
        if (!is_small_item(small[i], eps, t)) throw InputError("pack_small_items received a large item");
        cur.sum = checked_add(cur.sum, small[i]);
        cur.members.push_back(i);
        if ((long double)cur.sum >= lo) {
            out.push_back(std::move(cur));
            cur = Bundle{};
        }
    }
    if (!cur.members.empty()) out.push_back(std::move(cur));
    return out;
}

namespace {

struct Copy {
    u64 top = 0;  // largest original value among the constituents
    std::vector<i64> ids;
};

}  // namespace

std::vector<ReducedElement> reduce_copies(const std::vector<std::pair<u64, i64>>& copies) {
    std::map<u64, std::vector<Copy>> pool;
    for (auto [v, id] : copies) {
        if (v == 0) throw InputError("reduction needs positive values");
        pool[v].push_back(Copy{v, {id}});
    }
    std::vector<ReducedElement> out;
    while (!pool.empty()) {
        auto it = pool.begin();
        const u64 x = it->first;
        std::vector<Copy> cs = std::move(it->second);
        pool.erase(it);
        const size_t keep = cs.size() <= 2 ? cs.size() : (cs.size() % 2 ? 1 : 2);
        for (size_t i = 0; i < keep; ++i) {
            ReducedElement e;
            e.value = x;
            e.base = cs[i].top;
            e.p = floor_log2(x / cs[i].top);
            e.constituents = std::move(cs[i].ids);
            out.push_back(std::move(e));
        }
        if (keep == cs.size()) continue;
        const u64 twice = checked_mul(x, 2);
        auto& dst = pool[twice];
        for (size_t i = keep; i + 1 < cs.size(); i += 2) {
            Copy merged;
            merged.top = std::max(cs[i].top, cs[i + 1].top);
            merged.ids = std::move(cs[i].ids);
            merged.ids.insert(merged.ids.end(), cs[i + 1].ids.begin(), cs[i + 1].ids.end());
            dst.push_back(std::move(merged));
        }
    }
    return out;
}

ReduceResult reduce_multiset(const MultiSet& a) {
    std::vector<std::pair<u64, i64>> copies;
    i64 idx = 0;
    for (u64 v : a.items()) {
        // Zeros contribute nothing to any subset sum and are dropped.
        if (v > 0) copies.emplace_back(v, idx);
        ++idx;
    }
    ReduceResult r;
    r.elements = reduce_copies(copies);
    for (const auto& e : r.elements) r.b.add(e.value);
    return r;
}

u64 ItemGroup::sum_tilde() const {
    u64 s = 0;
    for (const auto& it : items) s = checked_add(s, it.h);
    return s;
}

std::vector<size_t> BoundedInstance::back_map(const std::vector<i64>& fids) const {
    std::vector<size_t> out;
    for (i64 fid : fids)
        for (size_t zi : f.at(size_t(fid)).zitems)
            out.insert(out.end(), z[zi].originals.begin(), z[zi].originals.end());
    std::sort(out.begin(), out.end());
    return out;
}

BoundedInstance preprocess_bounded(const MultiSet& x, u64 t, double eps, int d) {
    if (!(eps > 0 && eps < 1)) throw InputError("eps must lie in (0,1)");
    if (d < 1) throw InputError("d must be positive");
    if (t == 0) throw InputError("target must be positive");
    BoundedInstance in;
    in.eps = eps;
    in.d = d;
    in.t = t;
    const long double e3t = (long double)eps * eps * eps * (long double)t;
    in.kappa = double(4.0L / e3t);
    in.t_bar = 4.0 / (eps * eps * eps);
    in.t_hat = (1 + eps) * in.t_bar;

    for (auto [v, c] : x.counts()) {
        if (v > t) break;
        for (u64 i = 0; i < c; ++i) in.originals.push_back(v);
    }
    std::vector<u64> small;
    std::vector<size_t> small_idx;
    for (size_t i = 0; i < in.originals.size(); ++i) {
        if (is_small_item(in.originals[i], eps, t)) {
            small.push_back(in.originals[i]);
            small_idx.push_back(i);
        } else {
            in.z.push_back(ZItem{in.originals[i], {i}});
        }
    }
    for (const Bundle& b : pack_small_items(small, eps, t)) {
        ZItem zi;
        zi.value = b.sum;
        for (size_t m : b.members) zi.originals.push_back(small_idx[m]);
        in.z.push_back(std::move(zi));
    }

    // Window j holds scaled values in [2^(j-1)/eps^2, 2^j/eps^2).
    const double log_inv = std::log2(1 / eps);
    std::map<int, std::map<double, std::vector<size_t>>> windows;
    std::vector<size_t> residual;
    for (size_t zi = 0; zi < in.z.size(); ++zi) {
        long double q = 4.0L * (long double)in.z[zi].value / ((long double)eps * (long double)t);
        if (q < 1) {
            residual.push_back(zi);
            continue;
        }
        int j = pow2_floor(double(q)) + 1;
        double v = double((long double)in.z[zi].value * (long double)in.kappa);
        windows[j][v].push_back(zi);
    }

    // Group (j, c) collects the smooth parts h of items rounded to (1+eps)^c h.
    std::map<std::pair<int, i64>, std::vector<std::pair<u64, i64>>> rounded;
    std::map<u64, std::vector<u64>> factor_of;
    u64 top_product = 0;
    std::vector<u64> top_factors;
    for (auto& [j, vals] : windows) {
        SmoothParams sp{eps, d, (j - 1) / log_inv, 1 + (j - 1) / log_inv};
        std::vector<double> vs;
        for (auto& kv : vals) vs.push_back(kv.first);
        RoundingResult rr = round_to_semismooth(vs, sp);
        in.worst_rounding = std::max(in.worst_rounding, rr.worst_relative_error);
        in.deltas += rr.delta.size();
        for (size_t i = 0; i < vs.size(); ++i) {
            const SmoothProduct& prod = rr.products.products[rr.values[i].product];
            factor_of[prod.value] = prod.factors;
            for (size_t zi : vals[vs[i]]) rounded[{j, rr.values[i].c}].emplace_back(prod.value, i64(zi));
        }
        top_product = rr.products.products.back().value;
        top_factors = rr.products.products.back().factors;
    }

    using Key = std::tuple<int, int, i64, int>;  // (j, i, c, p)
    std::map<Key, ItemGroup> groups;
    std::vector<std::pair<Key, FItem>> fitems;
    for (auto& [jc, copies] : rounded) {
        auto [j, c] = jc;
        const double rho = grid_power(c, eps);
        std::map<u64, int> seen;
        for (ReducedElement& e : reduce_copies(copies)) {
            int i = ++seen[e.value];
            Key key{j, i, c, e.p};
            FItem f;
            f.value = std::ldexp(rho, e.p) * double(e.base);
            f.h = e.base;
            f.p = e.p;
            for (i64 zi : e.constituents) f.zitems.push_back(size_t(zi));
            auto& g = groups[key];
            g.j = j;
            g.i = i;
            g.c = c;
            g.p = e.p;
            g.rho = rho;
            g.beta = std::ldexp(rho, e.p);
            g.lambda = (e.p + j - 1) / log_inv;
            fitems.emplace_back(key, std::move(f));
        }
    }
    // Assign group indices in key order, then F ids in group order.
    std::map<Key, size_t> gindex;
    for (auto& [key, g] : groups) {
        gindex[key] = in.groups.size();
        in.groups.push_back(g);
    }
    std::stable_sort(fitems.begin(), fitems.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [key, f] : fitems) {
        f.group = gindex[key];
        i64 fid = i64(in.f.size());
        in.groups[f.group].items.push_back(GroupItem{fid, f.h, factor_of[f.h]});
        in.f.push_back(std::move(f));
    }

    // Items below every window (only a final undersized bundle) are kept
    // exactly as singleton groups beta * h with beta = value / h.
    if (!residual.empty() && top_product == 0) {
        SmoothProducts sp = enumerate_smooth_products(SmoothParams{eps, d, 0, 1});
        top_product = sp.products.back().value;
        top_factors = sp.products.back().factors;
    }
    for (size_t zi : residual) {
        ItemGroup g;
        g.residual = true;
        g.j = 0;
        g.beta = g.rho = double((long double)in.z[zi].value * (long double)in.kappa) / double(top_product);
        g.lambda = -1;
        FItem f;
        f.value = g.beta * double(top_product);
        f.h = top_product;
        f.group = in.groups.size();
        f.zitems = {zi};
        g.items.push_back(GroupItem{i64(in.f.size()), top_product, top_factors});
        in.f.push_back(std::move(f));
        in.groups.push_back(std::move(g));
    }
    return in;
}

// ---------------------------------------------------------------- unbounded

UnboundedGateResult unbounded_gate(const std::vector<u64>& x, u64 t, double eps) {
    UnboundedGateResult g;
    const long double et = (long double)eps * (long double)t;
    u64 best_big = 0;
    for (u64 v : x)
        if (v >= t && (long double)v <= (long double)t + et && (best_big == 0 || v < best_big)) best_big = v;
    if (best_big) {
        g.solved = true;
        g.item = best_big;
        g.copies = 1;
        return g;
    }
    unsigned __int128 best_total = 0;
    for (u64 v : x) {
        if ((long double)v > et) continue;
        u64 copies = t / v + 1;
        unsigned __int128 total = (unsigned __int128)copies * v;
        if (!g.solved || total < best_total) {
            g.solved = true;
            g.item = v;
            g.copies = copies;
            best_total = total;
        }
    }
    return g;
}

u64 unbounded_threshold(double eps) {
    return u64(1) << (1 + pow2_floor(std::log2(1 / eps) + 1));
}

UnboundedInstance preprocess_unbounded(const std::vector<u64>& x, u64 t, double eps) {
    if (!(eps > 0 && eps < 1)) throw InputError("eps must lie in (0,1)");
    UnboundedInstance in;
    in.eps = eps;
    in.t = t;
    in.unit = double((long double)eps * eps * eps * (long double)t);
    in.t_hat = (1 + eps) / (eps * eps * eps);
    in.thresh = unbounded_threshold(eps);
    in.items = x;
    std::sort(in.items.begin(), in.items.end());
    in.items.erase(std::unique(in.items.begin(), in.items.end()), in.items.end());
    const long double et = (long double)eps * (long double)t;
    const double log_inv = std::log2(1 / eps);
    std::map<int, std::map<double, u64>> windows;
    for (u64 v : in.items) {
        if ((long double)v <= et || v >= t) throw InputError("unbounded items must lie in (eps t, t)");
        int j = pow2_floor(double((long double)v / et)) + 1;
        windows[j].emplace(double((long double)v / (long double)in.unit), v);
    }
    std::map<std::pair<int, i64>, std::map<u64, u64>> groups;
    for (auto& [j, vals] : windows) {
        SmoothParams sp{eps, 1, (j - 1) / log_inv, 1 + (j - 1) / log_inv};
        std::vector<double> vs;
        for (auto& kv : vals) vs.push_back(kv.first);
        RoundingResult rr = round_to_semismooth(vs, sp);
        in.worst_rounding = std::max(in.worst_rounding, rr.worst_relative_error);
        for (size_t i = 0; i < vs.size(); ++i) {
            u64 h = rr.products.products[rr.values[i].product].value;
            auto& slot = groups[{j, rr.values[i].c}];
            // Values are visited ascending, so the first original is the smallest.
            slot.emplace(h, vals[vs[i]]);
        }
    }
    for (auto& [jc, hs] : groups) {
        UGroup g;
        g.j = jc.first;
        g.c = jc.second;
        g.rho = grid_power(g.c, eps);
        g.lambda = (g.j - 1) / log_inv;
        for (auto [h, orig] : hs) g.items.push_back(UItem{h, orig});
        g.n = u64(std::floor(in.t_hat / (g.rho * double(g.items.front().h))));
        g.l = g.n <= in.thresh ? in.thresh : 2 * g.n * in.thresh;
        in.groups.push_back(std::move(g));
    }
    return in;
}

}  // namespace subsum
