#include "subsum/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "subsum/smooth.hpp"

namespace subsum {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Evaluates f(0..n-1) on up to `threads` workers; results keep index order.
template <class T, class F>
std::vector<T> parallel_map(size_t n, int threads, F f) {
    std::vector<T> out(n);
    if (threads <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    auto work = [&] {
        for (size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                out[i] = f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<int>(threads, int(n)); ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<SmoothItem> smooth_items(const ItemGroup& g) {
    std::vector<SmoothItem> out;
    for (const auto& it : g.items) out.push_back(SmoothItem{it.fid, it.h, it.factors, 1});
    return out;
}

std::vector<ItemSpec> item_specs(const ItemGroup& g) {
    std::vector<ItemSpec> out;
    for (const auto& it : g.items) out.push_back(ItemSpec{it.fid, it.h, 1});
    return out;
}

Witness group_universe(const ItemGroup& g, double unit_scale) {
    Witness w;
    for (const auto& it : g.items) w.push_back(Pick{it.fid, unit_scale * double(it.h), 1});
    std::sort(w.begin(), w.end(), [](const Pick& a, const Pick& b) { return a.item < b.item; });
    return w;
}

u64 structural_l(double eps) { return u64(std::floor(1 / eps + 1e-9)); }

bool is_sparse(const ItemGroup& g, double eps, const DenseConfig& cfg) {
    return double(g.items.size()) <= dense_gate_bound(structural_l(eps), cfg);
}

int cut_depth(const ItemGroup& g, int want) {
    const int depth = g.items.empty() ? 0 : int(g.items[0].factors.size());
    return std::max(0, std::min(want, depth));
}

std::vector<u64> group_h(const ItemGroup& g) {
    std::vector<u64> hs;
    for (const auto& it : g.items) hs.push_back(it.h);
    return hs;
}

std::vector<i64> group_ids(const ItemGroup& g) {
    std::vector<i64> ids;
    for (const auto& it : g.items) ids.push_back(it.fid);
    return ids;
}

// Answers every grid query with the dense structure; values in units of h.
SumsetResult grid_answers(const DenseStructure& ds, const std::set<u64>& grid) {
    std::map<u64, Witness> answers;
    for (u64 q : grid) {
        if (!ds.in_range(double(q))) continue;
        DenseAnswer a = query_max_below(ds, double(q));
        answers.emplace(a.value, a.witness);
    }
    std::vector<double> values;
    std::vector<Witness> bundles;
    for (auto& [v, w] : answers) {
        values.push_back(double(v));
        bundles.push_back(w);
    }
    return leaf_with_bundles(std::move(values), std::move(bundles));
}

// Grid points floor(k * step) for k = 1..count, plus the top of the range.
std::set<u64> query_grid(double step, u64 count, double lo, double hi) {
    std::set<u64> grid;
    for (u64 k = 1; k <= count; ++k) {
        double q = std::floor(double(k) * step);
        if (q > lo && q <= hi) grid.insert(u64(q));
    }
    double top = std::floor(hi);
    if (top > lo) grid.insert(u64(top));
    // The largest integer strictly below hi keeps the open end covered.
    double below = std::ceil(hi) - 1;
    if (below > lo) grid.insert(u64(below));
    return grid;
}

}  // namespace

double doubling_budget(int h, double eps) {
    double f = 0;
    for (int i = 1; i <= h; ++i) f = eps + 2 * (1 + eps) * f;
    return f;
}

int doubling_depth(double eps) { return 1 + pow2_floor(1 + std::log2(1 / eps)); }

// ---------------------------------------------------------------- groups

std::string partition_group_regime(const ItemGroup& g, double eps, const DenseConfig& cfg) {
    if (g.residual) return "residual";
    if (g.items.size() <= 1) return "single";
    if (g.lambda >= 0.5) return "large";
    return is_sparse(g, eps, cfg) ? "sparse" : "dense";
}

std::string subset_group_regime(const ItemGroup& g, double eps, const DenseConfig& cfg) {
    if (g.residual) return "residual";
    if (g.items.size() <= 1) return "single";
    return is_sparse(g, eps, cfg) ? "sparse" : "dense";
}

std::string unbounded_group_regime(const UGroup& g, double eps, double omega) {
    if (g.items.empty()) return "single";
    const u64 m = u64(std::floor(omega / g.rho / double(g.items.front().h)));
    return m > unbounded_threshold(eps) ? "multiples" : "direct";
}

SumsetResult partition_group_apx(const ItemGroup& g, double eps, double eps_stage, int d,
                                 const DenseConfig& cfg) {
    if (g.items.empty()) return leaf_from_set({0.0}, -1);
    const auto items = smooth_items(g);
    if (partition_group_regime(g, eps, cfg) != "dense") {
        auto r = smooth_subset_sums_approx(items, eps_stage, cut_depth(g, d / 4));
        return scale_result(r, g.beta);
    }
    // Dense group: exact-structure answers in the middle, coarse rounding at the tails.
    const u64 sigma_t = g.sum_tilde();
    const u64 l = structural_l(eps);
    const double lt = dense_threshold(sigma_t, l, g.items.size(), cfg);
    std::vector<SumsetResult> parts;
    if (lt < double(sigma_t) - lt) {
        DenseStructure ds = build_dense_structure(group_h(g), l, cfg, group_ids(g));
        auto grid = query_grid(eps_stage * double(sigma_t), u64(std::floor(1 / eps_stage)), lt,
                               double(sigma_t) - lt);
        auto mid = grid_answers(ds, grid);
        mid.comp = eps_stage * double(sigma_t) + 1;
        mid.u = double(sigma_t);
        parts.push_back(scale_result(mid, g.beta));
    }

    // Re-round M into one window at the coarser accuracy eps^(lambda+1/2).
    const double lo = std::pow(eps, -(2 + g.lambda));
    const double seg_scale[3] = {2.0, 1.0, 0.5};
    std::map<double, std::vector<std::pair<int, size_t>>> seg_values[3];
    for (size_t i = 0; i < g.items.size(); ++i) {
        const double v = g.beta * double(g.items[i].h);
        const int seg = v < lo ? 0 : (v < 2 * lo ? 1 : 2);
        seg_values[seg][v * seg_scale[seg]].emplace_back(seg, i);
    }
    SmoothParams sp{eps, d, g.lambda, 1.5};
    double gamma = 0;
    std::map<std::pair<int, i64>, std::vector<SmoothItem>> coarse;
    for (int seg = 0; seg < 3; ++seg) {
        if (seg_values[seg].empty()) continue;
        std::vector<double> vs;
        for (auto& kv : seg_values[seg]) vs.push_back(kv.first);
        RoundingResult rr = round_to_semismooth(vs, sp);
        gamma = std::max(gamma, rr.worst_relative_error);
        for (size_t i = 0; i < vs.size(); ++i) {
            const SmoothProduct& prod = rr.products.products[rr.values[i].product];
            for (auto [s, idx] : seg_values[seg][vs[i]])
                coarse[{seg, rr.values[i].c}].push_back(
                    SmoothItem{g.items[idx].fid, prod.value, prod.factors, 1});
        }
    }
    std::vector<SumsetResult> coarse_parts;
    for (auto& [key, its] : coarse) {
        const double beta = grid_power(key.second, sp.gamma()) / seg_scale[key.first];
        const int k = std::max(0, std::min(d / 4, int(its[0].factors.size())));
        coarse_parts.push_back(scale_result(smooth_subset_sums_approx(its, eps_stage, k), beta));
    }
    SumsetResult cv = merge_apx_subset_sums(coarse_parts, eps_stage);
    const double big_l = g.beta * lt;
    const double clip_at = (1 + gamma) * big_l + cv.comp;
    SumsetResult left = clip_result(cv, clip_at);
    left.comp = gamma * big_l + cv.comp;
    left.sound = cv.sound + gamma / (1 - gamma) * (clip_at + cv.sound);
    left.u = big_l;
    const double total = g.sum();
    SumsetResult right = complement_result(left, total, group_universe(g, g.beta));
    parts.push_back(left);
    parts.push_back(right);
    SumsetResult out = union_results(parts);
    out.u = total;
    return out;
}

SumsetResult subset_group_apx(const ItemGroup& g, double eps, double eps_stage, int d,
                              double omega, const DenseConfig& cfg) {
    if (g.items.empty()) return leaf_from_set({0.0}, -1);
    const double upsilon = omega / g.beta;
    const u64 cap = u64(std::floor(upsilon));
    SumsetResult out;
    if (subset_group_regime(g, eps, cfg) != "dense") {
        out = scale_result(subset_sums_exact_items(item_specs(g), cap), g.beta);
    } else {
        const u64 sigma_t = g.sum_tilde();
        const u64 l = structural_l(eps);
        const double lt = dense_threshold(sigma_t, l, g.items.size(), cfg);
        const u64 tail = std::min<u64>(sigma_t, u64(std::floor(lt)));
        SumsetResult low = smooth_capped_subset_sums_exact(smooth_items(g), tail, cut_depth(g, d / 2));
        SumsetResult high = complement_result(low, double(sigma_t), group_universe(g, 1.0));
        std::vector<SumsetResult> parts{clip_result(low, upsilon), clip_result(high, upsilon)};
        const double hi = std::min(upsilon, double(sigma_t) - lt);
        if (hi > lt) {
            DenseStructure ds = build_dense_structure(group_h(g), l, cfg, group_ids(g));
            auto grid = query_grid(eps_stage * upsilon, u64(std::floor(1 / eps_stage)), lt, hi);
            auto mid = grid_answers(ds, grid);
            mid.comp = eps_stage * upsilon + 1;
            parts.push_back(mid);
        }
        SumsetResult u = union_results(parts);
        out = scale_result(u, g.beta);
    }
    out.u = omega;
    out.cap = omega;
    return out;
}

SumsetResult unbounded_group_apx(const UGroup& g, double eps, double eps_stage, double omega) {
    if (g.items.empty()) return leaf_from_set({0.0}, -1);
    const double upsilon = omega / g.rho;
    std::vector<double> values;
    std::vector<Witness> bundles;
    for (const UItem& it : g.items) {
        values.push_back(double(it.h));
        bundles.push_back(Witness{Pick{i64(it.original), double(it.h), 1}});
    }
    const double gmax = values.back(), gmin = values.front();
    const u64 m = u64(std::floor(upsilon / gmin));
    const u64 thresh = unbounded_threshold(eps);
    const int hp = doubling_depth(eps);
    // Doubling chain: U^h approximates sums of 2^h elements, capped at `limit`.
    auto chain = [&](double limit) {
        SumsetResult u = leaf_with_bundles(values, bundles);
        for (int h = 1; h <= hp; ++h) {
            const double cap = std::min(std::ldexp(gmax, h), limit);
            SumsetResult next = approx_pair(u, u, eps_stage / 2, cap + u.comp, cap + u.comp, kInf);
            next = clip_result(next, cap + next.comp);
            next.u = cap;
            next.cap = cap;
            u = next;
        }
        return u;
    };
    SumsetResult res;
    if (m > thresh) {
        // Binary decomposition of multiplicities: the k-th part holds 2^k times
        // a chain capped at upsilon / 2^k, so every part errs by O(eps) upsilon.
        std::vector<SumsetResult> parts;
        for (int k = 0; k <= pow2_floor(double(m)); ++k)
            parts.push_back(scale_result(chain(std::ldexp(upsilon, -k)), std::ldexp(1.0, k)));
        res = merge_capped_apx_subset_sums(parts, eps_stage, upsilon);
    } else {
        res = chain(upsilon);
    }
    res = clip_result(res, upsilon + res.comp);
    res.u = upsilon;
    res = scale_result(res, g.rho);
    res.u = omega;
    res.cap = omega;
    return res;
}

// ---------------------------------------------------------------- solvers

namespace {

double stage_eps(double eps, size_t count, bool split) {
    if (!split) return eps;
    return eps / (std::ceil(std::log2(double(count) + 1)) + 2);
}

void finish_times(SolveResult& r, Clock::time_point t0) { r.times.total_ms = ms_since(t0); }

std::string group_key(const ItemGroup& g) {
    return "j=" + std::to_string(g.j) + ",i=" + std::to_string(g.i) + ",c=" + std::to_string(g.c) +
           ",p=" + std::to_string(g.p);
}

GroupTrace trace_of(std::string key, std::string regime, size_t items, double scale,
                    const SumsetResult& s) {
    return GroupTrace{std::move(key), std::move(regime), items, scale, s.comp, s.sound, s.size()};
}

u64 max_bundle(const BoundedInstance& in) {
    u64 m = 0;
    for (const ZItem& z : in.z)
        if (z.originals.size() > 1 || is_small_item(z.value, in.eps, in.t)) m = std::max(m, z.value);
    return m;
}

// Indices of the top candidates below the stretched bound and below the plain
// bound, largest first, without repetition.
std::vector<long> candidate_indices(const SumsetResult& s, double stretched, double plain, int count) {
    std::vector<long> out;
    for (double bound : {stretched, plain}) {
        const long top = s.index_at_most(bound);
        for (long idx = top; idx >= 0 && idx > top - std::max(1, count); --idx)
            if (std::find(out.begin(), out.end(), idx) == out.end()) out.push_back(idx);
    }
    return out;
}

std::vector<i64> fids_of(const Witness& w) {
    std::vector<i64> ids;
    for (const Pick& p : w)
        for (u64 c = 0; c < p.count; ++c) ids.push_back(p.item);
    return ids;
}

// Upper bound on OPT from the largest selectable value c and the budget.
double bounded_opt_upper(const BoundedInstance& in, double c, double comp) {
    const double gamma = in.worst_rounding * (1 + 1e-9);
    const double slack = 1e-9 * (c + comp + 1);
    return (c + comp + slack) / ((1 - gamma) * in.kappa) + double(max_bundle(in));
}

}  // namespace

SolveResult subset_sum_weak_approx(const MultiSet& x, u64 t, double eps, int d,
                                   const SolverOptions& opt) {
    const auto t0 = Clock::now();
    SolveResult r;
    r.problem = "subset-sum";
    r.eps = r.eps_used = eps;
    r.d = d;
    r.t = t;
    r.total = x.total();
    if (!(eps > 0 && eps < 1)) throw InputError("eps must lie in (0,1)");
    if (d < 1) throw InputError("d must be positive");
    if (t == 0 || x.empty()) {
        r.path = "trivial";
        finish_times(r, t0);
        return r;
    }
    GateResult gate = trivial_gate(x, t);
    if (gate.solved) {
        r.path = "gate";
        r.value = gate.kept.total();
        r.witness = gate.kept.items();
        r.opt_upper = double(r.value);
        finish_times(r, t0);
        return r;
    }
    if (eps > kEpsMax) {
        try {
            ExactSolution s = exact_subset_sum_dp(gate.kept, t, opt.dp_budget);
            r.path = "exact-dp";
            r.value = s.value;
            r.witness = s.items;
            r.opt_upper = double(s.value);
            finish_times(r, t0);
            return r;
        } catch (const BudgetError&) {
            r.eps_used = kEpsMax;
        }
    }
    const double e = r.eps_used;
    auto tp = Clock::now();
    BoundedInstance in = preprocess_bounded(gate.kept, t, e, d);
    r.times.preprocess_ms = ms_since(tp);
    r.eps_stage = stage_eps(e, in.f.size(), opt.split_stage_eps);
    r.groups = in.groups.size();
    r.reduced_items = in.f.size();

    tp = Clock::now();
    auto parts = parallel_map<SumsetResult>(in.groups.size(), opt.threads, [&](size_t i) {
        return subset_group_apx(in.groups[i], e, r.eps_stage, d, in.t_hat, opt.dense);
    });
    for (size_t i = 0; i < parts.size(); ++i) {
        const ItemGroup& g = in.groups[i];
        r.trace.push_back(trace_of(group_key(g), subset_group_regime(g, e, opt.dense), g.items.size(),
                                   g.beta, parts[i]));
    }
    r.times.groups_ms = ms_since(tp);
    tp = Clock::now();
    SumsetResult merged = merge_capped_apx_subset_sums(parts, r.eps_stage, in.t_hat);
    r.times.merge_ms = ms_since(tp);
    r.final_set_size = merged.size();
    r.completeness = merged.comp;

    tp = Clock::now();
    const long top = merged.index_at_most(in.t_hat + merged.comp);
    r.opt_upper = std::min(double(t), bounded_opt_upper(in, merged.values()[top], merged.comp));
    r.path = "approx";
    bool have = false;
    for (long idx : candidate_indices(merged, in.t_hat + merged.comp, in.t_bar + merged.comp, opt.candidates)) {
        auto orig = in.back_map(fids_of(merged.witness(size_t(idx))));
        u64 value = 0;
        for (size_t o : orig) value = checked_add(value, in.originals[o]);
        const double up = std::max(0.0, double(value) / double(t) - 1);
        const double low = std::max(0.0, 1 - double(value) / r.opt_upper);
        const double delta = std::max(up, low);
        if (!have || delta < r.delta || (delta == r.delta && value > r.value)) {
            have = true;
            r.value = value;
            r.delta = delta;
            r.delta_up = up;
            r.delta_low = low;
            r.witness.clear();
            for (size_t o : orig) r.witness.push_back(in.originals[o]);
        }
    }
    std::sort(r.witness.begin(), r.witness.end());
    r.times.backtrack_ms = ms_since(tp);
    finish_times(r, t0);
    return r;
}

SolveResult partition_approx(const MultiSet& x, double eps, int d, const SolverOptions& opt) {
    const auto t0 = Clock::now();
    SolveResult r;
    r.problem = "partition";
    r.eps = r.eps_used = eps;
    r.d = d;
    r.total = x.total();
    if (!(eps > 0 && eps < 1)) throw InputError("eps must lie in (0,1)");
    if (d < 1) throw InputError("d must be positive");
    const u64 t = x.total() / 2;
    r.t = t;
    if (t == 0) {
        r.path = "trivial";
        finish_times(r, t0);
        return r;
    }
    GateResult gate = trivial_gate(x, t);
    if (gate.solved) {
        r.path = "gate";
        r.value = gate.kept.total();
        r.witness = gate.kept.items();
        r.opt_upper = double(r.value);
        finish_times(r, t0);
        return r;
    }
    if (eps > kEpsMax) {
        try {
            ExactSolution s = exact_subset_sum_dp(gate.kept, t, opt.dp_budget);
            r.path = "exact-dp";
            r.value = s.value;
            r.witness = s.items;
            r.opt_upper = double(s.value);
            finish_times(r, t0);
            return r;
        } catch (const BudgetError&) {
            r.eps_used = kEpsMax;
        }
    }
    const double e = r.eps_used;
    auto tp = Clock::now();
    BoundedInstance in = preprocess_bounded(gate.kept, t, e, d);
    r.times.preprocess_ms = ms_since(tp);
    r.eps_stage = stage_eps(e, in.f.size(), opt.split_stage_eps);
    r.groups = in.groups.size();
    r.reduced_items = in.f.size();

    tp = Clock::now();
    auto parts = parallel_map<SumsetResult>(in.groups.size(), opt.threads, [&](size_t i) {
        return partition_group_apx(in.groups[i], e, r.eps_stage, d, opt.dense);
    });
    for (size_t i = 0; i < parts.size(); ++i) {
        const ItemGroup& g = in.groups[i];
        r.trace.push_back(trace_of(group_key(g), partition_group_regime(g, e, opt.dense),
                                   g.items.size(), g.beta, parts[i]));
    }
    r.times.groups_ms = ms_since(tp);
    tp = Clock::now();
    SumsetResult merged = merge_apx_subset_sums(parts, r.eps_stage);
    r.times.merge_ms = ms_since(tp);
    r.final_set_size = merged.size();
    r.completeness = merged.comp;

    tp = Clock::now();
    const long top = merged.index_at_most(in.t_hat + merged.comp);
    r.opt_upper = std::min(double(t), bounded_opt_upper(in, merged.values()[top], merged.comp));
    r.path = "approx";
    bool have = false;
    for (long idx : candidate_indices(merged, in.t_hat + merged.comp, in.t_bar + merged.comp, opt.candidates)) {
        auto orig = in.back_map(fids_of(merged.witness(size_t(idx))));
        u64 chosen = 0;
        for (size_t o : orig) chosen = checked_add(chosen, in.originals[o]);
        // The side not exceeding half of the total is returned.
        const bool flip = chosen > t;
        const u64 value = flip ? x.total() - chosen : chosen;
        if (!have || value > r.value) {
            have = true;
            r.value = value;
            MultiSet side;
            for (size_t o : orig) side.add(in.originals[o]);
            if (flip) {
                MultiSet rest = x;
                for (auto [v, c] : side.counts()) rest.remove(v, c);
                side = rest;
            }
            r.witness = side.items();
        }
    }
    r.delta_low = std::max(0.0, 1 - double(r.value) / r.opt_upper);
    r.delta = r.delta_low;
    r.times.backtrack_ms = ms_since(tp);
    finish_times(r, t0);
    return r;
}

SolveResult unbounded_subset_sum_weak_approx(const std::vector<u64>& x_in, u64 t, double eps,
                                             const SolverOptions& opt) {
    const auto t0 = Clock::now();
    SolveResult r;
    r.problem = "unbounded";
    r.eps = r.eps_used = eps;
    r.d = 1;
    r.t = t;
    if (!(eps > 0 && eps < 1)) throw InputError("eps must lie in (0,1)");
    std::vector<u64> x;
    for (u64 v : x_in)
        if (v > 0) x.push_back(v);  // zero copies never change a sum
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    for (u64 v : x) r.total = checked_add(r.total, v);
    if (t == 0 || x.empty()) {
        r.path = "trivial";
        finish_times(r, t0);
        return r;
    }
    auto set_solution = [&](std::map<u64, u64> mult) {
        unsigned __int128 value = 0;
        for (auto [v, c] : mult) value += (unsigned __int128)v * c;
        if (value > ~u64(0)) throw OverflowError("solution value exceeds 64 bits");
        r.value = u64(value);
        r.multiplicity = std::move(mult);
    };
    UnboundedGateResult gate = unbounded_gate(x, t, eps);
    if (gate.solved) {
        r.path = "gate";
        set_solution({{gate.item, gate.copies}});
        r.opt_upper = double(t);
        r.delta_up = std::max(0.0, double(r.value) / double(t) - 1);
        r.delta = r.delta_up;
        finish_times(r, t0);
        return r;
    }
    if (eps > kEpsMax) {
        try {
            ExactSolution s = exact_unbounded_dp(x, t, opt.dp_budget);
            r.path = "exact-dp";
            set_solution(s.multiplicity);
            r.opt_upper = double(s.value);
            finish_times(r, t0);
            return r;
        } catch (const BudgetError&) {
            r.eps_used = kEpsMax;
        }
    }
    const double e = r.eps_used;
    const long double et = (long double)e * (long double)t;
    std::vector<u64> rest;
    for (u64 v : x)
        if ((long double)v > et && v < t) rest.push_back(v);
    if (rest.size() != x.size()) {
        // Items in [t, (1+eps) t] or below eps t would have been taken by the
        // gate at the requested accuracy; re-check at the pipeline accuracy.
        UnboundedGateResult g2 = unbounded_gate(x, t, e);
        if (g2.solved) {
            r.path = "gate";
            set_solution({{g2.item, g2.copies}});
            r.opt_upper = double(t);
            r.delta_up = std::max(0.0, double(r.value) / double(t) - 1);
            r.delta = r.delta_up;
            finish_times(r, t0);
            return r;
        }
    }
    if (rest.empty()) {
        r.path = "trivial";
        finish_times(r, t0);
        return r;
    }
    auto tp = Clock::now();
    UnboundedInstance in = preprocess_unbounded(rest, t, e);
    r.times.preprocess_ms = ms_since(tp);
    r.groups = in.groups.size();
    const double gamma = in.worst_rounding * (1 + 1e-9);

    // If the rounded multiset Y is small relative to t_hat, all of it is optimal.
    long double sum_y = 0;
    for (const UGroup& g : in.groups)
        for (const UItem& it : g.items) sum_y += (long double)g.l * g.rho * it.h;
    r.reduced_items = 0;
    for (const UGroup& g : in.groups) r.reduced_items += g.items.size();
    if (2 * sum_y < (long double)in.t_hat) {
        std::map<u64, u64> mult;
        for (const UGroup& g : in.groups)
            for (const UItem& it : g.items) mult[it.original] += g.l;
        r.path = "approx";
        set_solution(mult);
        r.opt_upper = std::min(double(t), double(sum_y) * in.unit / (1 - gamma) * (1 + 1e-9));
        r.delta_up = std::max(0.0, double(r.value) / double(t) - 1);
        r.delta_low = std::max(0.0, 1 - double(r.value) / r.opt_upper);
        r.delta = std::max(r.delta_up, r.delta_low);
        finish_times(r, t0);
        return r;
    }
    // The doubling chain stacks another h_p levels of pairwise sums on top of
    // the merge tree, so the stage accuracy is split over those as well.
    r.eps_stage = stage_eps(e, in.groups.size(), opt.split_stage_eps);
    if (opt.split_stage_eps) r.eps_stage /= double(doubling_depth(e) + 1);
    tp = Clock::now();
    auto parts = parallel_map<SumsetResult>(in.groups.size(), opt.threads, [&](size_t i) {
        return unbounded_group_apx(in.groups[i], e, r.eps_stage, in.t_hat);
    });
    for (size_t i = 0; i < parts.size(); ++i) {
        const UGroup& g = in.groups[i];
        r.trace.push_back(trace_of("j=" + std::to_string(g.j) + ",c=" + std::to_string(g.c),
                                   unbounded_group_regime(g, e, in.t_hat), g.items.size(), g.rho,
                                   parts[i]));
    }
    r.times.groups_ms = ms_since(tp);
    tp = Clock::now();
    SumsetResult merged = merge_capped_apx_subset_sums(parts, r.eps_stage, in.t_hat);
    r.times.merge_ms = ms_since(tp);
    r.final_set_size = merged.size();
    r.completeness = merged.comp;

    tp = Clock::now();
    const long top = merged.index_at_most(in.t_hat + merged.comp);
    const double c = merged.values()[top];
    r.opt_upper = std::min(double(t), (c + merged.comp) * in.unit / (1 - gamma) * (1 + 1e-9));
    r.path = "approx";
    // A pick's unit is a power-of-two multiple of its rounded value rho * h.
    std::map<u64, double> base_unit;
    for (const UGroup& g : in.groups)
        for (const UItem& it : g.items) base_unit[it.original] = g.rho * double(it.h);
    bool have = false;
    for (long idx : candidate_indices(merged, in.t_hat + merged.comp, in.t_hat / (1 + e) + merged.comp,
                                      opt.candidates)) {
        std::map<u64, u64> mult;
        unsigned __int128 value = 0;
        for (const Pick& p : merged.witness(size_t(idx))) {
            const u64 copies = p.count * u64(std::llround(p.unit / base_unit.at(u64(p.item))));
            mult[u64(p.item)] += copies;
            value += (unsigned __int128)u64(p.item) * copies;
        }
        const double v = double(value);
        const double up = std::max(0.0, v / double(t) - 1);
        const double low = std::max(0.0, 1 - v / r.opt_upper);
        const double delta = std::max(up, low);
        if (!have || delta < r.delta || (delta == r.delta && u64(value) > r.value)) {
            have = true;
            set_solution(mult);
            r.delta = delta;
            r.delta_up = up;
            r.delta_low = low;
        }
    }
    r.times.backtrack_ms = ms_since(tp);
    finish_times(r, t0);
    return r;
}

}  // namespace subsum
