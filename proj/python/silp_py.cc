#include <silp/cli.hh>
#include <silp/crosscompose.hh>
#include <silp/error.hh>
#include <silp/graph.hh>
#include <silp/kernelizer.hh>
#include <silp/oracle.hh>
#include <silp/silp_format.hh>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;

using namespace silp;

using std::int64_t;
using std::optional;
using std::string;
using std::vector;

namespace
{
    auto report_dict(const string & text) -> py::dict
    {
        py::dict out;
        std::istringstream in{text};
        for (string line; std::getline(in, line);) {
            auto eq = line.find('=');
            if (eq != string::npos)
                out[py::str(line.substr(0, eq))] = line.substr(eq + 1);
        }
        return out;
    }

    auto parse(const string & text) -> IlpInstance
    {
        return parse_silp(std::string_view{text});
    }

    auto solve_text(const string & text, uint64_t budget, unsigned threads, bool propagate, const string & order) -> py::dict
    {
        auto instance = parse(text);
        SearchConfig config;
        config.node_budget = budget;
        config.threads = std::max(1u, threads);
        config.propagate = propagate;
        if (order == "mcf")
            config.order = VarOrder::MostConstrainedFirst;
        else if (order != "declaration")
            throw py::value_error{"order must be 'declaration' or 'mcf'"};

        SolveOutcome outcome;
        {
            py::gil_scoped_release release;
            outcome = solve(instance, config);
        }
        py::dict out;
        out["status"] = outcome.status == SolveStatus::Feasible ? "feasible"
                : outcome.status == SolveStatus::Infeasible   ? "infeasible"
                                                               : "budget_exhausted";
        out["nodes"] = outcome.nodes;
        if (outcome.witness) {
            py::dict witness;
            std::size_t i = 0;
            for (const auto & v : instance.vars())
                witness[py::str(v.name)] = (*outcome.witness)[i++];
            out["witness"] = witness;
        }
        else
            out["witness"] = py::none();
        return out;
    }

    auto kernelize_text(const string & text, optional<int64_t> r, optional<int64_t> d, unsigned threads) -> py::tuple
    {
        auto instance = parse(text);
        auto shifted = shift_to_canonical_box(instance, d ? d : instance.declared_d());
        KernelOptions options;
        options.threads = std::max(1u, threads);
        auto rr = r ? *r : shifted.instance.declared_r().value_or(3);
        KernelResult result;
        {
            py::gil_scoped_release release;
            result = kernelize(shifted.instance, rr, *shifted.instance.declared_d(), options);
        }
        return py::make_tuple(serialize_silp(result.kernel), report_dict(result.report.to_report()));
    }

    auto compose_dimacs(const vector<string> & graphs, int k, bool dedup) -> py::tuple
    {
        vector<Graph> parsed;
        for (const auto & g : graphs)
            parsed.push_back(parse_dimacs(std::string_view{g}));
        auto family = normalize_family(std::move(parsed), k);
        ComposeOptions options;
        options.dedup_padding = dedup;
        auto composition = compose(family, options);
        return py::make_tuple(serialize_silp(composition.instance), report_dict(composition_stats(composition, family).to_report()));
    }

    auto run(const vector<string> & args, const string & stdin_text) -> py::tuple
    {
        std::istringstream in{stdin_text};
        std::ostringstream out, err;
        int code = 0;
        {
            py::gil_scoped_release release;
            code = run_cli(args, in, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
    }
}

PYBIND11_MODULE(_silpkit, m)
{
    m.doc() = "Sparse ILP kernelizer, clique cross-composition and exact oracle";

    // the module attribute keeps the class alive
    static PyObject * silp_error = py::exception<Error>(m, "SilpError", PyExc_ValueError).ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        }
        catch (const Error & e) {
            string name{error_name(e.code())};
            auto exc = py::handle(silp_error)(name + ": " + e.what());
            exc.attr("code") = name;
            PyErr_SetObject(silp_error, exc.ptr());
        }
    });

    m.def("check", [](const string & text) {
        auto instance = parse(text);
        py::dict out;
        out["n"] = instance.num_vars();
        out["m"] = instance.num_constraints();
        out["sparsity"] = instance.sparsity();
        out["max_box_width"] = instance.max_box_width();
        out["max_abs_coefficient"] = max_abs_coefficient(instance).to_string();
        out["encoding_bits"] = encoding_size_bits(instance);
        return out;
    }, py::arg("text"), "Size summary of a SILP instance.");

    m.def("normalize", [](const string & text) { return serialize_silp(parse(text)); }, py::arg("text"),
        "Parse and re-serialize, yielding the canonical SILP text.");

    m.def("solve", &solve_text, py::arg("text"), py::arg("budget") = SearchConfig{}.node_budget, py::arg("threads") = 1,
        py::arg("propagate") = true, py::arg("order") = "declaration",
        "Decide feasibility; returns status, nodes and a name -> value witness.");

    m.def("kernelize", &kernelize_text, py::arg("text"), py::arg("r") = py::none(), py::arg("d") = py::none(),
        py::arg("threads") = 1, "Kernel SILP text and its report as a dict of strings.");

    m.def("compose", &compose_dimacs, py::arg("graphs"), py::arg("k"), py::arg("dedup_padding") = false,
        "Compose DIMACS graphs into one instance; returns SILP text and the ledger.");

    m.def("has_k_clique", [](const string & dimacs, int k) { return has_k_clique(parse_dimacs(std::string_view{dimacs}), k); },
        py::arg("dimacs"), py::arg("k"));

    m.def("run_cli", &run, py::arg("args"), py::arg("stdin") = "",
        "Run the command line in-process; returns (exit code, stdout, stderr).");
}
