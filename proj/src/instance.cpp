#include "subsum/instance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace subsum {

namespace {

u64 parse_u64_text(const std::string& s) {
    if (s.empty() || s.size() > 20 || !std::all_of(s.begin(), s.end(), ::isdigit))
        throw InputError("invalid integer: " + s);
    unsigned __int128 v = 0;
    for (char c : s) v = v * 10 + u64(c - '0');
    if (v > ~u64(0)) throw InputError("integer exceeds 64 bits: " + s);
    return u64(v);
}

u64 json_integer(const json& j, const char* what) {
    if (j.is_string()) return parse_u64_text(j.get<std::string>());
    if (j.is_number_unsigned()) {
        u64 v = j.get<u64>();
        if (v > kMaxExactInt) throw InputError(std::string(what) + " above 2^53 must be a string");
        return v;
    }
    if (j.is_number_integer()) throw InputError(std::string(what) + " must be nonnegative");
    throw InputError(std::string(what) + " must be an integer");
}

json encode_integer(u64 v) {
    if (v <= kMaxExactInt) return json(v);
    return json(std::to_string(v));
}

u64 uniform_in(std::mt19937_64& rng, u64 lo, u64 hi) {
    return lo + rng() % (hi - lo + 1);
}

}  // namespace

void validate_problem(const std::string& problem) {
    if (problem != "subset-sum" && problem != "partition" && problem != "unbounded")
        throw InputError("unknown problem: " + problem);
}

Instance parse_instance(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("parse error: ") + e.what());
    }
    if (!j.is_object()) throw InputError("instance must be a JSON object");
    Instance inst;
    if (!j.contains("problem") || !j["problem"].is_string()) throw InputError("missing problem");
    inst.problem = j["problem"].get<std::string>();
    validate_problem(inst.problem);
    if (!j.contains("items") || !j["items"].is_array()) throw InputError("missing items array");
    for (const auto& v : j["items"]) inst.items.push_back(json_integer(v, "item"));
    if (j.contains("target") && !j["target"].is_null()) inst.target = json_integer(j["target"], "target");
    if (inst.problem != "partition" && !inst.target) throw InputError("missing target");
    if (j.contains("meta")) inst.meta = j["meta"];
    return inst;
}

std::string serialize_instance(const Instance& inst) {
    json j;
    j["problem"] = inst.problem;
    json items = json::array();
    for (u64 v : inst.items) items.push_back(encode_integer(v));
    j["items"] = items;
    if (inst.target) j["target"] = encode_integer(*inst.target);
    j["meta"] = inst.meta;
    return j.dump();
}

int default_d(const std::string& problem) {
    if (problem == "partition") return 12;
    if (problem == "unbounded") return 1;
    return 6;
}

u64 apply_t_rule(const std::string& rule, u64 total) {
    if (rule == "half") return total / 2;
    if (rule == "third") return total / 3;
    if (rule == "quarter") return total / 4;
    if (rule.rfind("abs:", 0) == 0) return parse_u64_text(rule.substr(4));
    char* end = nullptr;
    double f = std::strtod(rule.c_str(), &end);
    if (end == rule.c_str() || *end != '\0' || !(f > 0)) throw InputError("invalid t rule: " + rule);
    return u64(std::floor(f * double(total)));
}

GenSpec parse_gen_spec(const std::string& text, const std::string& problem) {
    GenSpec g;
    g.problem = problem;
    auto colon = text.find(':');
    g.kind = text.substr(0, colon);
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw InputError("invalid generator parameter: " + kv);
            std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
            if (k == "n") g.n = parse_u64_text(v);
            else if (k == "seed") g.seed = parse_u64_text(v);
            else if (k == "max") g.vmax = parse_u64_text(v);
            else if (k == "t") g.t_rule = v;
            else throw InputError("unknown generator parameter: " + k);
        }
    }
    return g;
}

Instance gen_instance(const GenSpec& spec) {
    validate_problem(spec.problem);
    if (spec.n == 0) throw InputError("generator needs n >= 1");
    if (spec.vmax < 2 || spec.vmax > kMaxExactInt) throw InputError("generator max must lie in [2, 2^53]");
    std::mt19937_64 rng(spec.seed);
    Instance inst;
    inst.problem = spec.problem;
    std::vector<u64>& x = inst.items;
    const u64 vmax = spec.vmax;
    if (spec.kind == "uniform") {
        for (u64 i = 0; i < spec.n; ++i) x.push_back(uniform_in(rng, 1, vmax));
    } else if (spec.kind == "dense-window") {
        const u64 b = std::max<u64>(1, vmax / 2);
        for (u64 i = 0; i < spec.n; ++i) x.push_back(uniform_in(rng, b, 2 * b));
    } else if (spec.kind == "smooth-heavy") {
        const u64 primes[4] = {2, 3, 5, 7};
        for (u64 i = 0; i < spec.n; ++i) {
            u64 v = 1;
            while (true) {
                u64 p = primes[rng() % 4];
                if (v > vmax / p || (v > vmax / 64 && rng() % 3 == 0)) break;
                v *= p;
            }
            x.push_back(v);
        }
    } else if (spec.kind == "adversarial-sparse") {
        // Geometrically spread values: few subset sums land near any target.
        const double lg = std::log(double(vmax));
        for (u64 i = 0; i < spec.n; ++i) {
            double e = lg * double(i + 1) / double(spec.n);
            u64 base = u64(std::max(1.0, std::floor(std::exp(e))));
            u64 jitter = base / 8;
            x.push_back(std::min(vmax, base + (jitter ? rng() % jitter : 0)));
        }
    } else {
        throw InputError("unknown generator kind: " + spec.kind);
    }
    if (spec.problem == "unbounded") {
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
    }
    u64 total = 0;
    for (u64 v : x) total = checked_add(total, v);
    // Partition targets are informational: the solver always uses half the total.
    inst.target = spec.problem == "partition" ? total / 2 : apply_t_rule(spec.t_rule, total);
    inst.meta = json{{"generator", spec.kind}, {"n", spec.n}, {"seed", spec.seed}, {"max", spec.vmax}};
    if (spec.problem != "partition") inst.meta["t_rule"] = spec.t_rule;
    return inst;
}

SolveResult solve_instance(const Instance& inst, double eps, int d, const SolverOptions& opt) {
    validate_problem(inst.problem);
    if (d <= 0) d = default_d(inst.problem);
    if (inst.problem == "partition") return partition_approx(MultiSet::from_items(inst.items), eps, d, opt);
    if (inst.problem == "subset-sum")
        return subset_sum_weak_approx(MultiSet::from_items(inst.items), *inst.target, eps, d, opt);
    return unbounded_subset_sum_weak_approx(inst.items, *inst.target, eps, opt);
}

ExactSolution exact_instance(const Instance& inst, u64 budget) {
    validate_problem(inst.problem);
    if (inst.problem == "unbounded") return exact_unbounded_dp(inst.items, *inst.target, budget);
    MultiSet x = MultiSet::from_items(inst.items);
    u64 t = inst.problem == "partition" ? x.total() / 2 : *inst.target;
    return exact_subset_sum_dp(x, t, budget);
}

VerifyOutcome verify_against_opt(const Instance& inst, const SolveResult& r, u64 opt) {
    VerifyOutcome out;
    std::ostringstream msg;
    const double slack = 1e-9;
    // The witness must be drawn from the input and re-sum to the value.
    unsigned __int128 sum = 0;
    if (inst.problem == "unbounded") {
        for (auto [v, c] : r.multiplicity) {
            if (std::find(inst.items.begin(), inst.items.end(), v) == inst.items.end()) {
                out.ok = false;
                msg << "witness uses an item outside X; ";
            }
            sum += (unsigned __int128)v * c;
        }
    } else {
        MultiSet all = MultiSet::from_items(inst.items);
        MultiSet w = MultiSet::from_items(r.witness);
        if (!all.contains(w)) {
            out.ok = false;
            msg << "witness is not a sub-multiset of X; ";
        }
        for (u64 v : r.witness) sum += v;
    }
    if (sum != r.value) {
        out.ok = false;
        msg << "witness does not re-sum to the value; ";
    }
    const double v = double(r.value);
    out.ratio = opt ? v / double(opt) : 1.0;
    if (v < (1 - r.delta) * double(opt) * (1 - slack)) {
        out.ok = false;
        msg << "value below (1-delta) OPT; ";
    }
    if (inst.problem == "partition") {
        const double total = double(MultiSet::from_items(inst.items).total());
        if (v > total / 2 + r.delta * total + slack * total) {
            out.ok = false;
            msg << "value above half the total plus delta; ";
        }
    } else {
        const double t = double(*inst.target);
        if (v > (1 + r.delta) * t * (1 + slack)) {
            out.ok = false;
            msg << "value above (1+delta) t; ";
        }
    }
    out.message = msg.str();
    return out;
}

json result_to_json(const SolveResult& r, bool timings, bool trace) {
    json j;
    j["problem"] = r.problem;
    j["path"] = r.path;
    j["eps"] = r.eps;
    j["eps_used"] = r.eps_used;
    j["eps_stage"] = r.eps_stage;
    j["d"] = r.d;
    j["t"] = encode_integer(r.t);
    j["total"] = encode_integer(r.total);
    j["value"] = encode_integer(r.value);
    if (r.problem == "unbounded") {
        json m = json::array();
        for (auto [v, c] : r.multiplicity) m.push_back(json::array({encode_integer(v), encode_integer(c)}));
        j["witness"] = m;
    } else {
        json w = json::array();
        for (u64 v : r.witness) w.push_back(encode_integer(v));
        j["witness"] = w;
    }
    j["certificate"] = json{{"delta", r.delta},
                            {"delta_low", r.delta_low},
                            {"delta_up", r.delta_up},
                            {"opt_upper", r.opt_upper},
                            {"completeness", r.completeness}};
    j["stats"] = json{{"groups", r.groups},
                      {"reduced_items", r.reduced_items},
                      {"final_set_size", r.final_set_size}};
    if (trace) {
        json groups = json::array();
        std::map<std::string, size_t> regimes;
        for (const GroupTrace& g : r.trace) {
            ++regimes[g.regime];
            groups.push_back(json{{"key", g.key},
                                  {"regime", g.regime},
                                  {"items", g.items},
                                  {"scale", g.scale},
                                  {"comp", g.comp},
                                  {"sound", g.sound},
                                  {"set_size", g.set_size}});
        }
        j["trace"] = json{{"groups", groups}, {"regimes", regimes}, {"dense", regimes.count("dense") > 0}};
    }
    if (timings)
        j["times_ms"] = json{{"preprocess", r.times.preprocess_ms},
                             {"groups", r.times.groups_ms},
                             {"merge", r.times.merge_ms},
                             {"backtrack", r.times.backtrack_ms},
                             {"total", r.times.total_ms}};
    return j;
}

}  // namespace subsum
