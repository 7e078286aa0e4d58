#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "subsum/solvers.hpp"

namespace subsum {

using json = nlohmann::json;

// Canonical instance file: {problem, items, target?, meta}.
struct Instance {
    std::string problem;  // "subset-sum", "partition" or "unbounded"
    std::vector<u64> items;
    std::optional<u64> target;
    json meta = json::object();
};

Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);
void validate_problem(const std::string& problem);

struct GenSpec {
    std::string problem = "subset-sum";
    std::string kind = "uniform";  // uniform | dense-window | smooth-heavy | adversarial-sparse
    u64 n = 50;
    u64 seed = 1;
    u64 vmax = 1000000;
    std::string t_rule = "half";   // half | third | quarter | <fraction> | abs:<value>
};

// Parses "kind:n=50,seed=1,max=1000,t=0.9".
GenSpec parse_gen_spec(const std::string& text, const std::string& problem);
Instance gen_instance(const GenSpec& spec);
u64 apply_t_rule(const std::string& rule, u64 total);

int default_d(const std::string& problem);

SolveResult solve_instance(const Instance& inst, double eps, int d, const SolverOptions& opt);
ExactSolution exact_instance(const Instance& inst, u64 budget);

// Weak-approximation inequalities of a result against the exact optimum.
struct VerifyOutcome {
    bool ok = true;
    double ratio = 1;  // value / opt (1 if opt = 0)
    std::string message;
};
VerifyOutcome verify_against_opt(const Instance& inst, const SolveResult& r, u64 opt);

json result_to_json(const SolveResult& r, bool timings, bool trace = false);

}  // namespace subsum
