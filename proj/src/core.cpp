#include "subsum/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace subsum {

u64 checked_add(u64 a, u64 b) {
    u64 out;
    if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in addition");
    return out;
}

u64 checked_mul(u64 a, u64 b) {
    u64 out;
    if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in multiplication");
    return out;
}

MultiSet MultiSet::from_items(const std::vector<u64>& items) {
    MultiSet m;
    for (u64 x : items) m.add(x);
    return m;
}

MultiSet MultiSet::from_counts(const std::map<u64, u64>& counts) {
    MultiSet m;
    for (auto [v, c] : counts) m.add(v, c);
    return m;
}

void MultiSet::add(u64 value, u64 count) {
    if (count == 0) return;
    u64 new_total = checked_add(total_, checked_mul(value, count));
    counts_[value] = checked_add(counts_[value], count);
    cardinality_ = checked_add(cardinality_, count);
    total_ = new_total;
}

void MultiSet::remove(u64 value, u64 count) {
    auto it = counts_.find(value);
    if (it == counts_.end() || it->second < count) throw InputError("removing absent multiset item");
    it->second -= count;
    if (it->second == 0) counts_.erase(it);
    cardinality_ -= count;
    total_ -= value * count;
}

u64 MultiSet::count(u64 value) const {
    auto it = counts_.find(value);
    return it == counts_.end() ? 0 : it->second;
}

u64 MultiSet::min() const {
    if (counts_.empty()) throw InputError("min of empty multiset");
    return counts_.begin()->first;
}

u64 MultiSet::max() const {
    if (counts_.empty()) throw InputError("max of empty multiset");
    return counts_.rbegin()->first;
}

std::vector<u64> MultiSet::items() const {
    std::vector<u64> out;
    out.reserve(cardinality_);
    for (auto [v, c] : counts_)
        for (u64 i = 0; i < c; ++i) out.push_back(v);
    return out;
}

std::vector<u64> MultiSet::support() const {
    std::vector<u64> out;
    out.reserve(counts_.size());
    for (auto& kv : counts_) out.push_back(kv.first);
    return out;
}

bool MultiSet::contains(const MultiSet& other) const {
    for (auto [v, c] : other.counts_)
        if (count(v) < c) return false;
    return true;
}

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

namespace {

// Distance from x to the nearest element of sorted vector s (infinity if empty).
double nearest_distance(const std::vector<double>& s, double x) {
    if (s.empty()) return INFINITY;
    auto it = std::lower_bound(s.begin(), s.end(), x);
    double best = INFINITY;
    if (it != s.end()) best = *it - x;
    if (it != s.begin()) best = std::min(best, x - *std::prev(it));
    return best;
}

}  // namespace

VerifyReport verify_apx_set(const std::vector<double>& c_in, const std::vector<double>& a_in,
                            double r, double u, double err_add) {
    VerifyReport rep;
    std::vector<double> c = sorted_unique(c_in);
    std::vector<double> a = sorted_unique(a_in);
    const double slack = kRelSlack * std::max(1.0, u);
    const double tol = r * u + err_add + slack;
    std::ostringstream msg;
    for (double x : c) {
        if (x < -slack || x > (1 + r) * u + slack) {
            rep.upper_ok = false;
            msg << "value " << x << " outside [0,(1+r)u]; ";
            break;
        }
    }
    for (double x : c) {
        double dist = nearest_distance(a, x);
        rep.worst_sound = std::max(rep.worst_sound, dist);
        if (dist > tol) {
            rep.sound_ok = false;
            msg << "value " << x << " is " << dist << " from the target set; ";
            break;
        }
    }
    for (double x : a) {
        if (x > u) break;
        double dist = nearest_distance(c, x);
        rep.worst_complete = std::max(rep.worst_complete, dist);
        if (dist > tol) {
            rep.complete_ok = false;
            msg << "target " << x << " is " << dist << " from the approximation; ";
            break;
        }
    }
    rep.ok = rep.upper_ok && rep.sound_ok && rep.complete_ok;
    rep.message = msg.str();
    return rep;
}

VerifyReport verify_apx_set(const std::vector<double>& c, const std::vector<u64>& a, double r,
                            double u, double err_add) {
    std::vector<double> ad(a.begin(), a.end());
    return verify_apx_set(c, ad, r, u, err_add);
}

int floor_log2(u64 x) {
    if (x == 0) throw InputError("floor_log2 of zero");
    return 63 - __builtin_clzll(x);
}

int pow2_floor(double x) {
    if (!(x >= 1)) throw InputError("pow2_floor requires x >= 1");
    int e;
    std::frexp(x, &e);  // x = m * 2^e with m in [0.5, 1)
    return e - 1;
}

void ApproxParams::validate() const {
    if (!(eps > 0 && eps < 1)) throw InputError("eps must lie in (0,1)");
    if (d < 1) throw InputError("d must be a positive integer");
    if (k < 0 || k > d) throw InputError("cut depth k must lie in [0,d]");
}

}  // namespace subsum
