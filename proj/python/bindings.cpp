// Python bindings: solvers, exact oracles and instance helpers. Results cross
// the boundary as JSON text so the Python side sees the same schema as the CLI.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subsum/instance.hpp"

namespace py = pybind11;
using namespace subsum;

namespace {

SolverOptions make_options(int threads, int candidates) {
    SolverOptions o;
    o.threads = threads;
    o.candidates = candidates;
    return o;
}

Instance make_instance(const std::string& problem, std::vector<u64> items, std::optional<u64> target) {
    Instance inst{problem, std::move(items), target, json::object()};
    validate_problem(problem);
    if (problem != "partition" && !target) throw InputError("missing target");
    return inst;
}

}  // namespace

PYBIND11_MODULE(_subsum, m) {
    m.doc() = "Approximate SUBSET SUM, PARTITION and UNBOUNDED SUBSET SUM";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
    py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);

    m.def(
        "solve_json",
        [](const std::string& problem, std::vector<u64> items, std::optional<u64> target, double eps, int d,
           int threads, int candidates, bool trace) {
            Instance inst = make_instance(problem, std::move(items), target);
            SolveResult r;
            {
                py::gil_scoped_release release;
                r = solve_instance(inst, eps, d, make_options(threads, candidates));
            }
            return result_to_json(r, false, trace).dump();
        },
        py::arg("problem"), py::arg("items"), py::arg("target") = py::none(), py::arg("eps") = 0.1,
        py::arg("d") = 0, py::arg("threads") = 1, py::arg("candidates") = SolverOptions{}.candidates,
        py::arg("trace") = false);

    m.def(
        "exact",
        [](const std::string& problem, std::vector<u64> items, std::optional<u64> target, u64 budget) {
            Instance inst = make_instance(problem, std::move(items), target);
            return exact_instance(inst, budget).value;
        },
        py::arg("problem"), py::arg("items"), py::arg("target") = py::none(),
        py::arg("budget") = kDefaultDpBudget);

    m.def(
        "generate_json",
        [](const std::string& problem, const std::string& spec) {
            return serialize_instance(gen_instance(parse_gen_spec(spec, problem)));
        },
        py::arg("problem"), py::arg("spec"));

    m.def(
        "verify",
        [](const std::string& instance_json, const std::string& problem, double eps, int d) {
            Instance inst = parse_instance(instance_json);
            if (inst.problem != problem) throw InputError("problem mismatch");
            SolveResult r = solve_instance(inst, eps, d, SolverOptions{});
            VerifyOutcome v = verify_against_opt(inst, r, exact_instance(inst, kDefaultDpBudget).value);
            return py::make_tuple(v.ok, v.ratio, v.message);
        },
        py::arg("instance_json"), py::arg("problem"), py::arg("eps") = 0.1, py::arg("d") = 0);

    m.def("subset_sums", [](const std::vector<u64>& items) {
        return subset_sums_exact(MultiSet::from_items(items)).int_values();
    });
}
