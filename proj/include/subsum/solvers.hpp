#pragma once

#include <map>
#include <string>
#include <vector>

#include "subsum/core.hpp"
#include "subsum/dense.hpp"
#include "subsum/oracle.hpp"
#include "subsum/preprocess.hpp"
#include "subsum/sumset.hpp"

namespace subsum {

struct SolverOptions {
    DenseConfig dense;
    // Run the sumset stages at eps / (ceil(log2(|F| + 1)) + 2) so that errors
    // accumulated over the merge tree stay proportional to eps.
    bool split_stage_eps = true;
    // Number of top candidates (largest values <= the selection bound) whose
    // witnesses are evaluated exactly; the best certificate wins.
    int candidates = 32;
    int threads = 1;
    u64 dp_budget = kDefaultDpBudget;
};

struct PhaseTimes {
    double preprocess_ms = 0;
    double groups_ms = 0;
    double merge_ms = 0;
    double backtrack_ms = 0;
    double total_ms = 0;
};

// Per-group regime and budget breakdown.
struct GroupTrace {
    std::string key;     // window / class identifiers of the group
    std::string regime;  // "single", "sparse", "dense", "large", "residual", "direct", "multiples"
    size_t items = 0;
    double scale = 1;    // value of one scaled unit inside the group
    double comp = 0;     // completeness budget of the group's set
    double sound = 0;    // soundness budget of the group's set
    size_t set_size = 0;
};

struct SolveResult {
    std::string problem;
    std::string path;  // "trivial", "gate", "exact-dp", "approx"
    double eps = 0;        // requested accuracy
    double eps_used = 0;   // accuracy of the approximation pipeline
    double eps_stage = 0;  // accuracy of the sumset stages
    int d = 0;
    u64 t = 0;
    u64 total = 0;      // sum of all input items
    u64 value = 0;      // sum of the returned (multi)set
    std::vector<u64> witness;           // returned items, ascending (bounded problems)
    std::map<u64, u64> multiplicity;    // returned copies (unbounded)
    // Certificate: value <= (1+delta) t and value >= (1-delta) OPT, where
    // opt_upper is a proven upper bound on OPT.
    double delta = 0;
    double delta_low = 0;
    double delta_up = 0;
    double opt_upper = 0;
    double completeness = 0;  // recorded completeness budget of the final set (scaled units)
    size_t groups = 0;
    size_t reduced_items = 0;
    size_t final_set_size = 0;
    std::vector<GroupTrace> trace;
    PhaseTimes times;
};

// ---- per-group approximations (scaled units, items identified by F ids) ----
SumsetResult partition_group_apx(const ItemGroup& g, double eps, double eps_stage, int d,
                                 const DenseConfig& cfg = {});
SumsetResult subset_group_apx(const ItemGroup& g, double eps, double eps_stage, int d,
                              double omega, const DenseConfig& cfg = {});
SumsetResult unbounded_group_apx(const UGroup& g, double eps, double eps_stage, double omega);

// Regime a group is routed to by the functions above.
std::string partition_group_regime(const ItemGroup& g, double eps, const DenseConfig& cfg = {});
std::string subset_group_regime(const ItemGroup& g, double eps, const DenseConfig& cfg = {});
std::string unbounded_group_regime(const UGroup& g, double eps, double omega);

// Budget recurrence f^h = eps + 2(1+eps) f^(h-1), f^0 = 0.
double doubling_budget(int h, double eps);
int doubling_depth(double eps);  // 1 + pow(1 + log2(1/eps))

// ---- end-to-end solvers ----
SolveResult partition_approx(const MultiSet& x, double eps, int d = 12,
                             const SolverOptions& opt = {});
SolveResult subset_sum_weak_approx(const MultiSet& x, u64 t, double eps, int d = 6,
                                   const SolverOptions& opt = {});
SolveResult unbounded_subset_sum_weak_approx(const std::vector<u64>& x, u64 t, double eps,
                                             const SolverOptions& opt = {});

}  // namespace subsum
