#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace subsum {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Largest integer that round-trips exactly through binary64 and JSON numbers.
constexpr u64 kMaxExactInt = (u64(1) << 53);

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

u64 checked_add(u64 a, u64 b);
u64 checked_mul(u64 a, u64 b);

// Finite multiset of nonnegative integers, stored as value -> multiplicity.
class MultiSet {
public:
    MultiSet() = default;
    static MultiSet from_items(const std::vector<u64>& items);
    static MultiSet from_counts(const std::map<u64, u64>& counts);

    void add(u64 value, u64 count = 1);
    // Removes `count` copies; throws if fewer are present.
    void remove(u64 value, u64 count = 1);

    const std::map<u64, u64>& counts() const { return counts_; }
    u64 count(u64 value) const;
    bool empty() const { return counts_.empty(); }
    u64 cardinality() const { return cardinality_; }
    u64 distinct() const { return counts_.size(); }
    u64 total() const { return total_; }
    u64 min() const;
    u64 max() const;
    std::vector<u64> items() const;    // ascending, with repetition
    std::vector<u64> support() const;  // ascending, distinct
    bool contains(const MultiSet& other) const;

    bool operator==(const MultiSet& o) const { return counts_ == o.counts_; }

private:
    std::map<u64, u64> counts_;
    u64 cardinality_ = 0;
    u64 total_ = 0;
};

// A sorted set of nonnegative reals together with its (r, u, err_add)
// approximation contract.
struct ApproxSet {
    std::vector<double> values;
    double r = 0;
    double u = 0;
    double err_add = 0;
};

// Floating tolerance admitted when comparing real-valued sets to their
// integer targets; values are binary64 so sums of rounded terms carry
// representation error of this relative order.
constexpr double kRelSlack = 1e-9;

struct VerifyReport {
    bool ok = true;
    bool upper_ok = true;     // every c <= (1+r)u
    bool sound_ok = true;     // every c is close to some a in A
    bool complete_ok = true;  // every a <= u is close to some c
    double worst_sound = 0;
    double worst_complete = 0;
    std::string message;
};

// Checks the three-sided contract of an (r, u, err_add)-approximation C of A.
VerifyReport verify_apx_set(const std::vector<double>& c, const std::vector<double>& a,
                            double r, double u, double err_add = 0);
VerifyReport verify_apx_set(const std::vector<double>& c, const std::vector<u64>& a,
                            double r, double u, double err_add = 0);

// Exponent p with 2^p <= x < 2^(p+1); rejects x < 1.
int pow2_floor(double x);
int floor_log2(u64 x);

// Largest eps for which the approximation pipeline is used; larger values
// are served by exact dynamic programming when it fits the budget.
constexpr double kEpsMax = 1.0 / 16.0;

struct ApproxParams {
    double eps = 1.0 / 16.0;
    int d = 6;
    int k = 3;
    void validate() const;
};

// Sorted distinct values of a vector of doubles.
std::vector<double> sorted_unique(std::vector<double> v);

}  // namespace subsum
