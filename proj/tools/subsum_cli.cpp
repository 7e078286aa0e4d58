// Command-line front end: solve single instances, generate instance files
// and run benchmark sweeps.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "subsum/instance.hpp"

using namespace subsum;

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kInputError = 2, kBudgetError = 3 };

struct CommonFlags {
    std::string problem = "subset-sum";
    int d = 0;
    std::string mode = "approx";
    int threads = 1;
    double dense_threshold = DenseConfig{}.c_threshold;
    double dense_gate = DenseConfig{}.c_gate;
    u64 dp_budget = kDefaultDpBudget;
    int candidates = SolverOptions{}.candidates;

    SolverOptions options() const {
        SolverOptions o;
        o.threads = threads;
        o.dense.c_threshold = dense_threshold;
        o.dense.c_gate = dense_gate;
        o.dp_budget = dp_budget;
        o.candidates = candidates;
        return o;
    }
};

void add_common(CLI::App* app, CommonFlags& f) {
    app->add_option("--problem", f.problem, "subset-sum | partition | unbounded")
        ->check(CLI::IsMember({"subset-sum", "partition", "unbounded"}));
    app->add_option("--d", f.d, "smoothness parameter (0 = problem default)");
    app->add_option("--mode", f.mode, "approx | exact | both")
        ->check(CLI::IsMember({"approx", "exact", "both"}));
    app->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
    app->add_option("--dense-threshold", f.dense_threshold, "dense-regime threshold constant")
        ->check(CLI::PositiveNumber);
    app->add_option("--dense-gate", f.dense_gate, "dense-regime gate constant")->check(CLI::PositiveNumber);
    app->add_option("--candidates", f.candidates, "top values whose witnesses are evaluated")
        ->check(CLI::PositiveNumber);
    app->add_option("--dp-budget", f.dp_budget, "cell budget of the exact dynamic programs");
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file: " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

Instance load_instance(const std::string& input, const std::string& gen, const std::string& problem) {
    if (!input.empty() && !gen.empty()) throw InputError("--input and --gen are mutually exclusive");
    if (!gen.empty()) return gen_instance(parse_gen_spec(gen, problem));
    if (input.empty()) throw InputError("one of --input or --gen is required");
    return parse_instance(read_input(input));
}

SolveResult exact_as_result(const Instance& inst, const ExactSolution& s) {
    SolveResult r;
    r.problem = inst.problem;
    r.path = "exact-dp";
    for (u64 v : inst.items) r.total += v;
    r.t = inst.problem == "partition" ? r.total / 2 : *inst.target;
    r.value = s.value;
    r.witness = s.items;
    r.multiplicity = s.multiplicity;
    r.opt_upper = double(s.value);
    return r;
}

std::string csv_header() {
    return "problem,n,eps,d,value,opt,ratio,delta_cert,time_ms_preprocess,time_ms_groups,"
           "time_ms_merge,time_ms_backtrack,time_ms_total";
}

std::string csv_row(const Instance& inst, const SolveResult& r, std::optional<u64> opt, double eps) {
    std::ostringstream os;
    os.precision(10);
    os << inst.problem << ',' << inst.items.size() << ',' << eps << ',' << r.d << ',' << r.value << ',';
    if (opt) os << *opt << ',' << (*opt ? double(r.value) / double(*opt) : 1.0);
    else os << ',';
    os << ',' << r.delta << ',' << r.times.preprocess_ms << ',' << r.times.groups_ms << ','
       << r.times.merge_ms << ',' << r.times.backtrack_ms << ',' << r.times.total_ms;
    return os.str();
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

double parse_eps(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !(v > 0 && v < 1)) throw InputError("eps must lie in (0,1): " + s);
    return v;
}

// ---------------------------------------------------------------- solve

struct SolveFlags {
    CommonFlags common;
    double eps = 0.1;
    std::string input, gen, out = "json";
    bool verify = false, trace = false, omit_timings = false;
};

int run_solve(const SolveFlags& f) {
    Instance inst = load_instance(f.input, f.gen, f.common.problem);
    const SolverOptions opt = f.common.options();
    const bool want_exact = f.common.mode != "approx" || f.verify;
    std::optional<ExactSolution> exact;
    if (want_exact) exact = exact_instance(inst, opt.dp_budget);

    SolveResult r;
    if (f.common.mode == "exact") r = exact_as_result(inst, *exact);
    else r = solve_instance(inst, f.eps, f.common.d, opt);

    std::optional<VerifyOutcome> check;
    if (exact) check = verify_against_opt(inst, r, exact->value);

    if (f.out == "csv") {
        std::cout << csv_header() << '\n';
        std::cout << csv_row(inst, r, exact ? std::optional<u64>(exact->value) : std::nullopt, f.eps) << '\n';
    } else {
        json j = result_to_json(r, !f.omit_timings, f.trace);
        j["n"] = inst.items.size();
        if (exact) {
            j["opt"] = exact->value;
            j["ratio"] = check->ratio;
        }
        if (f.verify) j["verified"] = json{{"ok", check->ok}, {"message", check->message}};
        std::cout << j.dump(2) << '\n';
    }
    if (f.verify && !check->ok) {
        std::cerr << "verification failed: " << check->message << '\n';
        return kVerifyFailed;
    }
    return kOk;
}

// ---------------------------------------------------------------- gen

int run_gen(const std::string& problem, const std::string& gen) {
    std::cout << serialize_instance(gen_instance(parse_gen_spec(gen, problem))) << '\n';
    return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchFlags {
    CommonFlags common;
    std::string eps = "0.1,0.05,0.02";
    std::string gen = "uniform:n=50,seed=1";
    std::string ns;  // optional n grid overriding the generator's n
    u64 seeds = 1;
    bool verify = false;
};

int run_bench(const BenchFlags& f) {
    std::vector<double> eps_grid;
    for (const auto& s : split_list(f.eps)) eps_grid.push_back(parse_eps(s));
    if (eps_grid.empty()) throw InputError("empty eps grid");
    GenSpec base = parse_gen_spec(f.gen, f.common.problem);
    std::vector<u64> n_grid;
    for (const auto& s : split_list(f.ns)) n_grid.push_back(std::stoull(s));
    if (n_grid.empty()) n_grid.push_back(base.n);

    struct Job {
        Instance inst;
        double eps;
    };
    std::vector<Job> jobs;
    for (u64 n : n_grid)
        for (u64 s = 0; s < f.seeds; ++s) {
            GenSpec g = base;
            g.n = n;
            g.seed = base.seed + s;
            Instance inst = gen_instance(g);
            for (double e : eps_grid) jobs.push_back({inst, e});
        }

    const bool want_exact = f.common.mode != "approx" || f.verify;
    std::vector<std::string> rows(jobs.size());
    std::vector<int> codes(jobs.size(), kOk);
    std::vector<std::string> errors(jobs.size());
    SolverOptions opt = f.common.options();
    opt.threads = 1;  // instances run in parallel instead
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < jobs.size();) {
            const Job& job = jobs[i];
            try {
                std::optional<u64> best;
                if (want_exact) best = exact_instance(job.inst, opt.dp_budget).value;
                SolveResult r = solve_instance(job.inst, job.eps, f.common.d, opt);
                if (best && f.verify) {
                    VerifyOutcome v = verify_against_opt(job.inst, r, *best);
                    if (!v.ok) {
                        codes[i] = kVerifyFailed;
                        errors[i] = v.message;
                    }
                }
                rows[i] = csv_row(job.inst, r, best, job.eps);
            } catch (const BudgetError& e) {
                codes[i] = kBudgetError;
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < std::max(1, f.common.threads); ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::cout << csv_header() << '\n';
    int code = kOk;
    for (size_t i = 0; i < jobs.size(); ++i) {
        if (!rows[i].empty()) std::cout << rows[i] << '\n';
        if (codes[i] != kOk) {
            std::cerr << "row " << i << ": " << errors[i] << '\n';
            code = std::max(code, codes[i]);
        }
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate SUBSET SUM, PARTITION and UNBOUNDED SUBSET SUM solver"};
    app.require_subcommand(1);

    SolveFlags sf;
    CLI::App* solve = app.add_subcommand("solve", "solve one instance and print the result");
    add_common(solve, sf.common);
    solve->add_option("--eps", sf.eps, "accuracy in (0,1)")->check(CLI::Range(0.0, 1.0));
    solve->add_option("--input", sf.input, "instance file, or - for stdin");
    solve->add_option("--gen", sf.gen, "generator spec kind:n=..,seed=..,max=..,t=..");
    solve->add_option("--out", sf.out, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    solve->add_flag("--verify", sf.verify, "compare against the exact oracle; exit 1 on violation");
    solve->add_flag("--trace", sf.trace, "include the per-group regime and budget breakdown");
    solve->add_flag("--omit-timings", sf.omit_timings, "leave phase timings out of the JSON");

    std::string gen_problem = "subset-sum", gen_spec;
    CLI::App* gen = app.add_subcommand("gen", "print a generated instance file");
    gen->add_option("--problem", gen_problem, "subset-sum | partition | unbounded")
        ->check(CLI::IsMember({"subset-sum", "partition", "unbounded"}));
    gen->add_option("--gen", gen_spec, "generator spec")->required();

    BenchFlags bf;
    CLI::App* bench = app.add_subcommand("bench", "sweep eps / n grids and print a CSV table");
    add_common(bench, bf.common);
    bench->add_option("--eps", bf.eps, "comma-separated eps grid");
    bench->add_option("--gen", bf.gen, "generator spec (seed is the first seed)");
    bench->add_option("--n", bf.ns, "comma-separated n grid");
    bench->add_option("--seeds", bf.seeds, "instances per grid point");
    bench->add_flag("--verify", bf.verify, "compare every row against the exact oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        if (*solve) return run_solve(sf);
        if (*gen) return run_gen(gen_problem, gen_spec);
        if (*bench) return run_bench(bf);
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kBudgetError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const OverflowError& e) {
        std::cerr << "overflow: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kOk;
}
