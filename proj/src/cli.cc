#include <silp/cli.hh>
#include <silp/crosscompose.hh>
#include <silp/error.hh>
#include <silp/kernelizer.hh>
#include <silp/oracle.hh>
#include <silp/silp_format.hh>

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

using namespace silp;

using std::int64_t;
using std::optional;
using std::ostream;
using std::string;
using std::vector;

namespace
{
    /// Missing or unwritable files: a usage problem, not a validation one.
    struct UsageError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct Streams
    {
        std::istream & in;
        ostream & out;
        ostream & err;
    };

    auto read_text(const string & path, Streams & io) -> string
    {
        if (path == "-")
            return string{std::istreambuf_iterator<char>{io.in}, {}};
        std::ifstream f{path, std::ios::binary};
        if (! f)
            throw UsageError{"cannot open " + path};
        return string{std::istreambuf_iterator<char>{f}, {}};
    }

    auto write_text(const string & path, const string & text, Streams & io) -> void
    {
        if (path == "-") {
            io.out << text;
            return;
        }
        std::ofstream f{path, std::ios::binary};
        if (! f)
            throw UsageError{"cannot write " + path};
        f << text;
    }

    auto read_instance(const string & path, Streams & io) -> IlpInstance
    {
        return parse_silp(std::string_view{read_text(path, io)});
    }

    auto budget_config(uint64_t budget, unsigned threads, bool no_propagate, const string & order) -> SearchConfig
    {
        if (budget == 0)
            throw UsageError{"--budget must be positive"};
        SearchConfig config;
        config.node_budget = budget;
        config.threads = std::max(1u, threads);
        config.propagate = ! no_propagate;
        config.order = order == "mcf" ? VarOrder::MostConstrainedFirst : VarOrder::Declaration;
        return config;
    }

    auto format_point(const vector<string> & names, const vector<int64_t> & values) -> string
    {
        string text;
        for (std::size_t i = 0; i < names.size(); ++i)
            text += (i ? "," : "") + names[i] + "=" + std::to_string(values[i]);
        return text;
    }

    auto cmd_check(const string & path, optional<int64_t> r, optional<int64_t> d, Streams & io) -> int
    {
        auto instance = read_instance(path, io);
        if (r && instance.sparsity() > static_cast<std::size_t>(*r))
            for (const auto & row : instance.constraints())
                if (row.sparsity() > static_cast<std::size_t>(*r))
                    throw Error{ErrorCode::SparsityViolation, "row " + row.tag() + " has " + std::to_string(row.sparsity()) +
                            " variables, more than r = " + std::to_string(*r)};
        if (d)
            for (const auto & v : instance.vars())
                if (v.width() > *d)
                    throw Error{ErrorCode::BoxTooWide, v.name + " has " + std::to_string(v.width()) + " values, more than d = " +
                            std::to_string(*d)};

        io.out << "n=" << instance.num_vars() << "\n";
        io.out << "m=" << instance.num_constraints() << "\n";
        io.out << "sparsity=" << instance.sparsity() << "\n";
        io.out << "max_box_width=" << instance.max_box_width() << "\n";
        io.out << "max_abs_coefficient=" << max_abs_coefficient(instance).to_string() << "\n";
        io.out << "encoding_bits=" << encoding_size_bits(instance) << "\n";
        return exit_code::ok;
    }

    auto cmd_gen(const string & manifest_path, const string & output, bool stats, bool dedup, unsigned threads, Streams & io) -> int
    {
        vector<Graph> graphs;
        int k = 0;
        if (manifest_path == "-") {
            std::istringstream text{read_text("-", io)};
            auto manifest = parse_manifest(text);
            for (const auto & p : manifest.graph_paths)
                graphs.push_back(read_graph_file(p));
            k = manifest.k;
        }
        else {
            if (! std::filesystem::exists(manifest_path))
                throw UsageError{"cannot open " + manifest_path};
            std::tie(graphs, k) = load_family(manifest_path);
        }

        auto family = normalize_family(std::move(graphs), k);
        ComposeOptions options;
        options.dedup_padding = dedup;
        options.threads = std::max(1u, threads);
        auto composition = compose(family, options);
        write_text(output, serialize_silp(composition.instance), io);
        if (stats)
            (output == "-" ? io.err : io.out) << composition_stats(composition, family).to_report();
        return exit_code::ok;
    }

    struct KernelizeArgs
    {
        vector<string> inputs;
        string output = "-";
        optional<string> out_dir;
        optional<string> report;
        optional<string> csv;
        optional<int64_t> r, d;
        unsigned threads = 1;
    };

    auto kernelize_one(const string & path, const KernelizeArgs & args, Streams & io) -> std::pair<string, KernelReport>
    {
        auto instance = read_instance(path, io);
        auto d = args.d ? args.d : instance.declared_d();
        auto shifted = shift_to_canonical_box(instance, d);
        auto r = args.r ? *args.r : shifted.instance.declared_r().value_or(3);
        if (r < 3)
            throw Error{ErrorCode::RTooSmall, "r = " + std::to_string(r) +
                    " < 3: such instances are decided directly in polynomial time and are not kernelized"};
        KernelOptions options;
        options.threads = std::max(1u, args.threads);
        auto result = kernelize(shifted.instance, r, *shifted.instance.declared_d(), options);
        return {serialize_silp(result.kernel), std::move(result.report)};
    }

    auto cmd_kernelize(const KernelizeArgs & args, Streams & io) -> int
    {
        if (args.inputs.size() == 1 && ! args.csv) {
            auto [text, report] = kernelize_one(args.inputs.front(), args, io);
            write_text(args.output, text, io);
            if (args.report)
                write_text(*args.report, report.to_report(), io);
            return exit_code::ok;
        }

        if (! args.csv)
            throw UsageError{"several inputs need --csv"};
        if (args.output != "-" || args.report)
            throw UsageError{"batch mode takes --out-dir instead of -o and --report"};
        string csv = KernelReport{}.csv_header();
        for (const auto & path : args.inputs) {
            auto [text, report] = kernelize_one(path, args, io);
            auto label = std::filesystem::path{path}.filename().string();
            csv += report.to_csv_row(label);
            if (args.out_dir)
                write_text((std::filesystem::path{*args.out_dir} / label).string(), text, io);
        }
        write_text(*args.csv, csv, io);
        return exit_code::ok;
    }

    auto cmd_solve(const string & path, const SearchConfig & config, optional<string> witness_path, Streams & io) -> int
    {
        auto instance = read_instance(path, io);
        auto outcome = solve(instance, config);
        io.err << "nodes=" << outcome.nodes << "\n";
        switch (outcome.status) {
            case SolveStatus::BudgetExhausted:
                io.out << "status=budget_exhausted\n";
                return exit_code::budget;
            case SolveStatus::Infeasible:
                io.out << "status=infeasible\n";
                return exit_code::answered_no;
            case SolveStatus::Feasible:
                break;
        }
        io.out << "status=feasible\n";
        if (witness_path) {
            string text;
            std::size_t i = 0;
            for (const auto & v : instance.vars())
                text += v.name + " = " + std::to_string((*outcome.witness)[i++]) + "\n";
            write_text(*witness_path, text, io);
        }
        return exit_code::ok;
    }

    auto resolve_names(const IlpInstance & instance, const vector<string> & names) -> vector<VarId>
    {
        vector<VarId> ids;
        for (const auto & name : names) {
            auto id = instance.vars().find(name);
            if (! id)
                throw Error{ErrorCode::UnknownVariable, "projection variable " + name + " not declared"};
            ids.push_back(*id);
        }
        return ids;
    }

    auto cmd_diff(const string & path_a, const string & path_b, const vector<string> & project, const SearchConfig & config, Streams & io) -> int
    {
        if (path_a == "-" && path_b == "-")
            throw UsageError{"only one input can be read from stdin"};
        auto a = read_instance(path_a, io);
        auto b = read_instance(path_b, io);

        if (project.empty()) {
            auto sa = solve(a, config), sb = solve(b, config);
            if (sa.status == SolveStatus::BudgetExhausted || sb.status == SolveStatus::BudgetExhausted) {
                io.out << "result=budget_exhausted\n";
                return exit_code::budget;
            }
            auto fa = sa.status == SolveStatus::Feasible, fb = sb.status == SolveStatus::Feasible;
            io.out << "a=" << (fa ? "feasible" : "infeasible") << "\n";
            io.out << "b=" << (fb ? "feasible" : "infeasible") << "\n";
            if (fa == fb) {
                io.out << "result=equivalent\n";
                return exit_code::ok;
            }
            const auto & side = fa ? a : b;
            const auto & witness = fa ? *sa.witness : *sb.witness;
            vector<string> names;
            for (const auto & v : side.vars())
                names.push_back(v.name);
            io.out << "result=differ\n";
            io.out << "only_in=" << (fa ? "a" : "b") << "\n";
            io.out << "point=" << format_point(names, witness) << "\n";
            return exit_code::answered_no;
        }

        auto ids_a = resolve_names(a, project), ids_b = resolve_names(b, project);
        vector<vector<int64_t>> pa, pb;
        try {
            pa = enumerate_solutions(a, ids_a, config);
            pb = enumerate_solutions(b, ids_b, config);
        }
        catch (const Error & e) {
            if (e.code() != ErrorCode::SpaceTooLarge)
                throw;
            io.out << "result=budget_exhausted\n";
            return exit_code::budget;
        }
        io.out << "a_points=" << pa.size() << "\n";
        io.out << "b_points=" << pb.size() << "\n";
        vector<vector<int64_t>> only_a, only_b;
        std::set_difference(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(only_a));
        std::set_difference(pb.begin(), pb.end(), pa.begin(), pa.end(), std::back_inserter(only_b));
        if (only_a.empty() && only_b.empty()) {
            io.out << "result=equivalent\n";
            return exit_code::ok;
        }
        bool from_a = only_b.empty() || (! only_a.empty() && only_a.front() < only_b.front());
        io.out << "result=differ\n";
        io.out << "only_in=" << (from_a ? "a" : "b") << "\n";
        io.out << "point=" << format_point(project, from_a ? only_a.front() : only_b.front()) << "\n";
        return exit_code::answered_no;
    }
}

auto silp::run_cli(const vector<string> & args, std::istream & in, ostream & out, ostream & err) -> int
{
    Streams io{in, out, err};
    CLI::App app{"Sparse ILP kernelizer, cross-composition generator and exact oracle", "silp"};
    app.require_subcommand(1);

    string input, input_b, output = "-";
    optional<int64_t> r, d;
    unsigned threads = 1;

    auto * check = app.add_subcommand("check", "Validate an instance and print its size");
    check->add_option("instance", input, "SILP file or -")->required();
    check->add_option("--r", r, "Maximum row sparsity");
    check->add_option("--d", d, "Maximum box width");

    bool stats = false, dedup = false;
    auto * gen = app.add_subcommand("gen", "Compose a clique family into one ILP instance");
    gen->add_option("manifest", input, "Family manifest or -")->required();
    gen->add_option("-o,--output", output, "Output SILP file");
    gen->add_flag("--stats", stats, "Print the variable and row ledger");
    gen->add_flag("--dedup-padding", dedup, "Skip non-edge rows of padding copies");
    gen->add_option("--threads", threads, "Worker threads");

    KernelizeArgs kargs;
    auto * kern = app.add_subcommand("kernelize", "Replace every row by point-exclusion gadgets");
    kern->add_option("instances", kargs.inputs, "SILP files or -")->required();
    kern->add_option("-o,--output", kargs.output, "Kernel SILP file");
    kern->add_option("--out-dir", kargs.out_dir, "Kernel directory in batch mode");
    kern->add_option("--r", kargs.r, "Row sparsity parameter (>= 3)");
    kern->add_option("--d", kargs.d, "Box width after shifting");
    kern->add_option("--report", kargs.report, "key=value report file");
    kern->add_option("--csv", kargs.csv, "One CSV row per input");
    kern->add_option("--threads", kargs.threads, "Worker threads");

    uint64_t budget = SearchConfig{}.node_budget;
    optional<string> witness;
    bool no_propagate = false;
    string order = "declaration";
    auto * solve_cmd = app.add_subcommand("solve", "Decide feasibility with the exact oracle");
    solve_cmd->add_option("instance", input, "SILP file or -")->required();
    solve_cmd->add_option("--budget", budget, "Node budget");
    solve_cmd->add_option("--witness", witness, "Write `name = value` lines here");
    solve_cmd->add_option("--threads", threads, "Worker threads");
    solve_cmd->add_flag("--no-propagate", no_propagate, "Disable bound propagation");
    solve_cmd->add_option("--order", order, "Variable order")->check(CLI::IsMember({"declaration", "mcf"}));

    vector<string> project;
    auto * diff = app.add_subcommand("diff", "Compare two instances by verdict or projected solutions");
    diff->add_option("a", input, "First SILP file")->required();
    diff->add_option("b", input_b, "Second SILP file")->required();
    diff->add_option("--project", project, "Comma-separated variable names")->delimiter(',');
    diff->add_option("--budget", budget, "Node budget per instance");
    diff->add_flag("--no-propagate", no_propagate, "Disable bound propagation");
    diff->add_option("--order", order, "Variable order")->check(CLI::IsMember({"declaration", "mcf"}));

    try {
        vector<string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        if (check->parsed())
            return cmd_check(input, r, d, io);
        if (gen->parsed())
            return cmd_gen(input, output, stats, dedup, threads, io);
        if (kern->parsed())
            return cmd_kernelize(kargs, io);
        if (solve_cmd->parsed())
            return cmd_solve(input, budget_config(budget, threads, no_propagate, order), witness, io);
        if (diff->parsed())
            return cmd_diff(input, input_b, project, budget_config(budget, 1, no_propagate, order), io);
    }
    catch (const UsageError & e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    }
    catch (const Error & e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::Io ? exit_code::usage : exit_code::validation;
    }
    return exit_code::usage;
}
