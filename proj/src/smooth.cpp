#include "subsum/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "subsum/convolution.hpp"

namespace subsum {

namespace {

constexpr double kFuzz = 1e-9;

u64 ceil_fuzzy(double x) {
    double r = std::round(x);
    if (std::fabs(x - r) <= kFuzz * std::max(1.0, std::fabs(x))) x = r;
    double c = std::ceil(x);
    return c < 1 ? 1 : u64(c);
}

u64 floor_fuzzy(double x) {
    double r = std::round(x);
    if (std::fabs(x - r) <= kFuzz * std::max(1.0, std::fabs(x))) x = r;
    double f = std::floor(x);
    return f < 0 ? 0 : u64(f);
}

using Prefix = std::vector<u64>;

std::vector<u64> prefix_of(const SmoothItem& it, int k) {
    return Prefix(it.factors.begin(), it.factors.begin() + k);
}

u64 product_of(const Prefix& p) {
    u64 r = 1;
    for (u64 h : p) r = checked_mul(r, h);
    return r;
}

void check_items(const std::vector<SmoothItem>& items, int k) {
    if (items.empty()) return;
    const size_t depth = items[0].factors.size();
    if (k < 0 || size_t(k) > depth) throw InputError("cut depth outside [0, number of factors]");
    for (const auto& it : items) {
        if (it.factors.size() != depth) throw InputError("smooth items need equal factor counts");
        if (product_of(it.factors) != it.value) throw InputError("factorisation does not match value");
        if (it.mult == 0) throw InputError("multiplicity must be positive");
    }
}

// Groups items by their length-k prefix (ordered map gives determinism).
std::map<Prefix, std::vector<ItemSpec>> cut_groups(const std::vector<SmoothItem>& items, int k) {
    std::map<Prefix, std::vector<ItemSpec>> groups;
    for (const auto& it : items) {
        Prefix p = prefix_of(it, k);
        groups[p].push_back(ItemSpec{it.id, it.value / product_of(p), it.mult});
    }
    return groups;
}

}  // namespace

double SmoothParams::gamma() const { return std::pow(eps, exponent()); }

int SmoothParams::dbar() const {
    double x = exponent() * d;
    double r = std::round(x);
    if (std::fabs(x - r) <= kFuzz) x = r;
    return int(std::ceil(x)) - 1;
}

void SmoothParams::validate() const {
    if (!(eps > 0 && eps < 1)) throw InputError("eps must lie in (0,1)");
    if (d < 1) throw InputError("d must be positive");
    if (lambda < -1) throw InputError("lambda must be at least -1");
    double e = exponent();
    if (!(e > 0 && e <= 1 + kFuzz)) throw InputError("2+lambda-alpha must lie in (0,1]");
    if (!(alpha >= 0 && alpha <= 2 + lambda)) throw InputError("alpha must lie in [0, 2+lambda]");
}

SmoothProducts enumerate_smooth_products(const SmoothParams& p) {
    p.validate();
    SmoothProducts out;
    out.gamma = p.gamma();
    out.dbar = p.dbar();
    const double root = std::pow(p.eps, -1.0 / p.d);
    const double last_exp = p.exponent() - double(out.dbar) / p.d;
    out.factor_lo = ceil_fuzzy(root / 2);
    out.factor_hi = floor_fuzzy(2 * root);
    out.last_lo = ceil_fuzzy(1 / (2 * std::pow(p.eps, last_exp)));
    out.last_hi = floor_fuzzy(2 / std::pow(p.eps, last_exp));
    out.window_lo = ceil_fuzzy(1 / (4 * out.gamma));
    out.window_hi = floor_fuzzy(1 / out.gamma);
    if (out.dbar == 0) {
        // A single factor is only bounded by the window itself.
        out.last_lo = out.window_lo;
        out.last_hi = out.window_hi;
    }
    if (out.window_hi > (u64(1) << 40)) throw BudgetError("smooth window too large");

    std::map<u64, std::vector<u64>> found;
    std::vector<u64> cur;
    const int dbar = out.dbar;
    std::function<void(u64, u64)> dfs = [&](u64 prod, u64 min_factor) {
        if (int(cur.size()) == dbar) {
            for (u64 h = out.last_lo; h <= out.last_hi; ++h) {
                u64 v = prod * h;
                if (v > out.window_hi) break;
                if (v < out.window_lo) continue;
                if (!found.count(v)) {
                    auto f = cur;
                    f.push_back(h);
                    found.emplace(v, std::move(f));
                }
            }
            return;
        }
        const int remaining = dbar - int(cur.size());
        for (u64 h = min_factor; h <= out.factor_hi; ++h) {
            // Remaining first-stage factors are >= h and the last is >= last_lo.
            long double lower = (long double)prod * h * std::pow((long double)h, remaining - 1) * out.last_lo;
            if (lower > (long double)out.window_hi) break;
            cur.push_back(h);
            dfs(prod * h, h);
            cur.pop_back();
        }
    };
    dfs(1, out.factor_lo);
    for (auto& [v, f] : found) out.products.push_back(SmoothProduct{v, f});
    return out;
}

TableEntry most_frequent_table_entry(const std::vector<i64>& k, const std::vector<i64>& s) {
    if (k.empty() || s.empty()) throw InputError("table needs rows and columns");
    const i64 kmin = *std::min_element(k.begin(), k.end());
    const i64 kmax = *std::max_element(k.begin(), k.end());
    const i64 smin = *std::min_element(s.begin(), s.end());
    const i64 smax = *std::max_element(s.begin(), s.end());
    std::vector<u64> f(kmax - kmin + 1, 0), g(smax - smin + 1, 0);
    for (i64 x : k) f[x - kmin] += 1;
    for (i64 x : s) g[smax - x] += 1;
    auto prod = poly_multiply_counts(f, g);
    // Coefficient e collects pairs with k_i - s_v = e + kmin - smax.
    TableEntry best;
    for (size_t e = 0; e < prod.size(); ++e) {
        if (prod[e] > best.count) {
            best.count = prod[e];
            best.c = i64(e) + kmin - smax;
        }
    }
    return best;
}

i64 grid_exponent(double x, double gamma) {
    if (!(x > 0)) throw InputError("grid exponent of a nonpositive value");
    const long double base = 1.0L + (long double)gamma;
    const long double lx = std::log((long double)x);
    i64 c = i64(std::floor(lx / std::log(base)));
    while (std::pow(base, (long double)(c + 1)) <= (long double)x) ++c;
    while (std::pow(base, (long double)c) > (long double)x) --c;
    return c;
}

double grid_power(i64 c, double gamma) {
    return double(std::pow(1.0L + (long double)gamma, (long double)c));
}

RoundingResult round_to_semismooth(const std::vector<double>& values, const SmoothParams& p,
                                   bool check_window) {
    p.validate();
    RoundingResult out;
    out.products = enumerate_smooth_products(p);
    out.gamma = out.products.gamma;
    const double gamma = out.gamma;
    if (out.products.products.empty()) throw InputError("no smooth products for these parameters");
    const double lo = std::pow(p.eps, -(2 + p.lambda));
    for (double x : values) {
        if (!(x > 0)) throw InputError("values must be positive");
        if (check_window && (x < lo * (1 - kFuzz) || x > 2 * lo * (1 + kFuzz)))
            throw InputError("value outside the rounding window");
    }
    std::vector<double> xs = sorted_unique(values);

    // Exponents of the products; equal exponents keep the smallest product.
    std::vector<std::pair<i64, size_t>> srow;
    for (size_t v = 0; v < out.products.products.size(); ++v) {
        i64 s = grid_exponent(double(out.products.products[v].value), gamma);
        if (srow.empty() || srow.back().first != s) srow.emplace_back(s, v);
    }
    std::vector<i64> s_list;
    for (auto& e : srow) s_list.push_back(e.first);

    std::vector<i64> kcol(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) kcol[i] = grid_exponent(xs[i], gamma);

    std::vector<long> assigned(xs.size(), -1);
    std::vector<i64> chosen_c(xs.size(), 0);
    std::vector<size_t> remaining(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) remaining[i] = i;
    while (!remaining.empty()) {
        std::vector<i64> ks;
        ks.reserve(remaining.size());
        for (size_t i : remaining) ks.push_back(kcol[i]);
        TableEntry best = most_frequent_table_entry(ks, s_list);
        std::vector<size_t> rest;
        for (size_t i : remaining) {
            i64 s = kcol[i] - best.c;
            auto it = std::lower_bound(s_list.begin(), s_list.end(), s);
            if (it != s_list.end() && *it == s) {
                assigned[i] = long(srow[it - s_list.begin()].second);
                chosen_c[i] = best.c;
            } else {
                rest.push_back(i);
            }
        }
        if (rest.size() == remaining.size()) throw std::logic_error("rounding made no progress");
        out.delta.push_back(best.c);
        remaining = std::move(rest);
    }
    std::sort(out.delta.begin(), out.delta.end());

    std::map<double, RoundedValue> by_value;
    for (size_t i = 0; i < xs.size(); ++i) {
        RoundedValue rv;
        rv.x = xs[i];
        rv.c = chosen_c[i];
        rv.product = size_t(assigned[i]);
        long double rho = std::pow(1.0L + (long double)gamma, (long double)rv.c);
        long double rounded = rho * (long double)out.products.products[rv.product].value;
        rv.rounded = double(rounded);
        long double rel = std::fabs((long double)xs[i] - rounded) / (long double)xs[i];
        out.worst_relative_error = std::max(out.worst_relative_error, double(rel));
        if (rel > (long double)gamma * (1 + std::ldexp(1.0L, -40)))
            throw std::logic_error("rounding error exceeds gamma");
        by_value[xs[i]] = rv;
    }
    out.values.reserve(values.size());
    for (double x : values) out.values.push_back(by_value.at(x));
    return out;
}

RoundingResult round_to_semismooth(const MultiSet& x, const SmoothParams& p) {
    std::vector<double> v;
    for (u64 a : x.support()) v.push_back(double(a));
    return round_to_semismooth(v, p);
}

SumsetResult smooth_subset_sums_approx(const std::vector<SmoothItem>& items, double eps, int k) {
    if (!(eps > 0)) throw InputError("eps must be positive");
    if (items.empty()) return leaf_from_set({0.0}, -1);
    check_items(items, k);
    std::map<Prefix, SumsetResult> level;
    for (auto& [prefix, specs] : cut_groups(items, k)) {
        u64 sigma = 0;
        for (auto& s : specs) sigma = checked_add(sigma, checked_mul(s.value, s.mult));
        auto exact = subset_sums_exact_items(specs);
        auto kept = bucket_extremes(exact, eps * double(sigma));
        level.emplace(prefix, scale_result(kept, double(product_of(prefix))));
    }
    for (int q = k - 1; q >= 0; --q) {
        std::map<Prefix, std::vector<SumsetResult>> parents;
        for (auto& [prefix, res] : level) parents[Prefix(prefix.begin(), prefix.begin() + q)].push_back(res);
        std::map<Prefix, SumsetResult> next;
        for (auto& [prefix, kids] : parents) next.emplace(prefix, merge_apx_subset_sums(kids, eps));
        level = std::move(next);
    }
    return level.begin()->second;
}

SumsetResult smooth_capped_subset_sums_exact(const std::vector<SmoothItem>& items, u64 omega,
                                             int k) {
    if (items.empty()) return leaf_from_set({0.0}, -1);
    check_items(items, k);
    // Node sets are stored in units of the prefix product pi_u.
    std::map<Prefix, SumsetResult> level;
    for (auto& [prefix, specs] : cut_groups(items, k))
        level.emplace(prefix, subset_sums_exact_items(specs, omega / product_of(prefix)));
    for (int q = k - 1; q >= 0; --q) {
        std::map<Prefix, std::vector<SumsetResult>> parents;
        for (auto& [prefix, res] : level) {
            Prefix parent(prefix.begin(), prefix.begin() + q);
            parents[parent].push_back(scale_result(res, double(prefix[q])));
        }
        std::map<Prefix, SumsetResult> next;
        for (auto& [prefix, kids] : parents) next.emplace(prefix, merge_exact(kids, omega / product_of(prefix)));
        level = std::move(next);
    }
    auto out = level.begin()->second;
    out.u = double(omega);
    out.cap = double(omega);
    return out;
}

}  // namespace subsum
