#include <silp/crosscompose.hh>
#include <silp/error.hh>
#include <silp/gadgets.hh>

#include <algorithm>
#include <fstream>
#include <map>
#include <thread>

using namespace silp;

using std::int64_t;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace
{
    constexpr int arity = 3;

    auto is_power_of_two(int value) -> bool
    {
        return value > 0 && (value & (value - 1)) == 0;
    }

    auto starts_with(const string & text, const string & prefix) -> bool
    {
        return text.rfind(prefix, 0) == 0;
    }

    const vector<string> family_names{"selector", "bits", "binary_chain", "products", "multiplication",
        "square_chain", "indicator", "nonedge", "target"};

    auto family_index(const string & name) -> size_t
    {
        return static_cast<size_t>(std::find(family_names.begin(), family_names.end(), name) - family_names.begin());
    }

    /// Family of a variable name or row tag as emitted by compose.
    auto classify(const string & label) -> string
    {
        if (label == "s" || label == "r" || starts_with(label, "range[s]"))
            return "selector";
        if (starts_with(label, "chain0."))
            return "binary_chain";
        if (starts_with(label, "chain1."))
            return "square_chain";
        if (starts_with(label, "mul"))
            return "multiplication";
        if (starts_with(label, "sq0.s_") || starts_with(label, "sq0.d_"))
            return std::count(label.begin(), label.end(), '_') == 1 ? "bits" : "products";
        if (starts_with(label, "y_") || starts_with(label, "upper[") || starts_with(label, "lower["))
            return "indicator";
        if (starts_with(label, "nonedge["))
            return "nonedge";
        return "target";
    }

    auto nonedge_rows_for(const Graph & g, int i, int t, VarId s, const vector<VarId> & y) -> vector<LinearConstraint>
    {
        vector<LinearConstraint> rows;
        auto n = g.n_vertices();
        // y_u + y_v <= 4 (t - i) s + 2 i^2 + 3
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (! g.has_edge(u, v))
                    rows.emplace_back(vector<Term>{{y[u], Rational{1}}, {y[v], Rational{1}}, {s, Rational{-4 * int64_t{t - i}}}},
                        Rational{2 * int64_t{i} * i + 3},
                        "nonedge[i=" + to_string(i) + ",{" + to_string(u) + "," + to_string(v) + "}]");
        return rows;
    }
}

auto GraphFamily::ell() const -> int
{
    int e = 0;
    while ((1 << e) < t())
        ++e;
    return e;
}

auto silp::normalize_family(vector<Graph> graphs, int k) -> GraphFamily
{
    if (graphs.empty())
        throw Error{ErrorCode::EmptyFamily, "no graphs given"};
    auto n = graphs.front().n_vertices();
    for (size_t i = 1; i < graphs.size(); ++i)
        if (graphs[i].n_vertices() != n)
            throw Error{ErrorCode::MixedVertexCounts, "graph " + to_string(i) + " has " + to_string(graphs[i].n_vertices()) +
                    " vertices, graph 0 has " + to_string(n)};
    if (k < 1 || k > n)
        throw Error{ErrorCode::BadK, "k = " + to_string(k) + " must lie in 1.." + to_string(n)};

    GraphFamily family;
    family.k = k;
    family.original_t = static_cast<int>(graphs.size());
    family.graphs = std::move(graphs);
    while (! is_power_of_two(family.t()))
        family.graphs.push_back(family.graphs.back());
    return family;
}

auto silp::load_family(const std::filesystem::path & manifest_path) -> std::pair<vector<Graph>, int>
{
    std::ifstream in{manifest_path};
    if (! in)
        throw Error{ErrorCode::Io, "cannot open manifest " + manifest_path.string()};
    auto manifest = parse_manifest(in);
    vector<Graph> graphs;
    for (const auto & p : manifest.graph_paths)
        graphs.push_back(read_graph_file(p.is_relative() ? manifest_path.parent_path() / p : p));
    return {std::move(graphs), manifest.k};
}

auto silp::compose(const GraphFamily & family, const ComposeOptions & options) -> Composition
{
    auto t = family.t();
    if (! is_power_of_two(t))
        throw Error{ErrorCode::NotPowerOfTwo, "family has " + to_string(t) + " graphs; normalize first"};
    auto n = family.n();
    auto ell = family.ell();
    auto k = family.k;
    if (k < 1 || k > n)
        throw Error{ErrorCode::BadK, "k = " + to_string(k) + " must lie in 1.." + to_string(n)};
    for (const auto & g : family.graphs)
        if (g.n_vertices() != n)
            throw Error{ErrorCode::MixedVertexCounts, "graphs differ in vertex count"};

    InstanceBuilder builder;
    CompositionLayout layout;
    layout.t = t;
    layout.ell = ell;
    layout.n = n;
    layout.k = k;

    int64_t tt = t;
    layout.s = builder.add_var("s", 0, tt - 1);
    layout.r = builder.add_var("r", 0, (tt - 1) * (tt - 1));
    builder.add_row({{layout.s, Rational{1}}}, Rational{tt - 1}, "range[s].upper");
    builder.add_row({{layout.s, Rational{-1}}}, Rational{0}, "range[s].lower");
    if (options.dedup_padding && family.original_t < t)
        builder.add_row({{layout.s, Rational{1}}}, Rational{int64_t{family.original_t} - 1}, "range[s].cap");

    GadgetSession session{builder};
    auto square = session.square(layout.s, layout.r, ell, arity);
    for (int i = 0; i < ell; ++i)
        layout.bits.push_back(square.notes.at("s_" + to_string(i)));
    layout.products.assign(ell, vector<VarId>(ell));
    layout.slacks.assign(ell, vector<VarId>(ell));
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j) {
            layout.products[i][j] = square.notes.at("s_" + to_string(i) + "_" + to_string(j));
            layout.slacks[i][j] = square.notes.at("d_" + to_string(i) + "_" + to_string(j));
        }

    for (int v = 0; v < n; ++v)
        layout.y.push_back(builder.add_var("y_" + to_string(v), 0, 2 * tt * tt));

    // 2ts - r + 1 <= y_v <= 2ts - r + 2
    for (int v = 0; v < n; ++v) {
        auto tag = "[v=" + to_string(v) + "]";
        builder.add_row({{layout.y[v], Rational{1}}, {layout.s, Rational{-2 * tt}}, {layout.r, Rational{1}}}, Rational{2}, "upper" + tag);
        builder.add_row({{layout.y[v], Rational{-1}}, {layout.s, Rational{2 * tt}}, {layout.r, Rational{-1}}}, Rational{-1}, "lower" + tag);
    }

    auto active = options.dedup_padding ? family.original_t : t;
    vector<vector<LinearConstraint>> per_instance(active);
    if (options.threads > 1 && active > 1) {
        vector<std::thread> pool;
        for (unsigned w = 0; w < options.threads; ++w)
            pool.emplace_back([&, w]() {
                for (int i = static_cast<int>(w); i < active; i += static_cast<int>(options.threads))
                    per_instance[i] = nonedge_rows_for(family.graphs[i], i, t, layout.s, layout.y);
            });
        for (auto & th : pool)
            th.join();
    }
    else
        for (int i = 0; i < active; ++i)
            per_instance[i] = nonedge_rows_for(family.graphs[i], i, t, layout.s, layout.y);
    for (auto & rows : per_instance)
        for (auto & row : rows)
            builder.add_row(std::move(row));

    // sum_v y_v - n (2ts - r + 1) >= k, with Y = sum_v y_v
    layout.y_sum = builder.add_var("Y", 0, int64_t{n} * 2 * tt * tt);
    GadgetSession target_session{builder, "target."};
    vector<std::pair<Rational, VarId>> ys;
    for (auto y : layout.y)
        ys.emplace_back(Rational{1}, y);
    auto chain = target_session.chain_sum(ys, layout.y_sum, arity);
    for (const auto & nv : chain.new_vars)
        layout.chain_aux.push_back(nv.id);
    builder.add_row({{layout.y_sum, Rational{-1}}, {layout.s, Rational{2 * tt * n}}, {layout.r, Rational{-int64_t{n}}}},
        Rational{-int64_t{k} - n}, "target");

    Composition result;
    result.instance = builder.build(3);
    result.layout = std::move(layout);

    result.measured.resize(family_names.size());
    for (size_t f = 0; f < family_names.size(); ++f)
        result.measured[f].family = family_names[f];
    for (const auto & v : result.instance.vars())
        ++result.measured[family_index(classify(v.name))].vars;
    for (const auto & row : result.instance.constraints())
        ++result.measured[family_index(classify(row.tag()))].rows;
    return result;
}

auto silp::decode_clique(const Composition & composition, const Assignment & values) -> vector<int>
{
    const auto & layout = composition.layout;
    auto s = values.at(layout.s.index), r = values.at(layout.r.index);
    auto high = 2 * int64_t{layout.t} * s - r + 2;
    vector<int> clique;
    for (int v = 0; v < layout.n; ++v)
        if (values.at(layout.y[v].index) == high)
            clique.push_back(v);
    return clique;
}

auto silp::composed_variable_count(int n, int ell) -> size_t
{
    size_t l = ell, nn = n;
    size_t binary_partials = ell >= 2 ? l : 0;
    size_t square_partials = ell >= 2 ? l * l : 0;
    size_t target_partials = n >= 2 ? nn : 0;
    return 2 + l + binary_partials + 2 * l * l + (l * l - l) + square_partials + nn + 1 + target_partials;
}

auto CompositionStats::within_bounds() const -> bool
{
    return variables <= variable_bound && max_abs_coefficient <= Rational{coefficient_bound};
}

auto silp::composition_stats(const Composition & composition, const GraphFamily & family) -> CompositionStats
{
    CompositionStats stats;
    stats.t = composition.layout.t;
    stats.original_t = family.original_t;
    stats.ell = composition.layout.ell;
    stats.n = composition.layout.n;
    stats.k = composition.layout.k;
    const auto & inst = composition.instance;
    const auto & layout = composition.layout;
    stats.variables = inst.num_vars();
    stats.constraints = inst.num_constraints();
    stats.max_abs_coefficient = max_abs_coefficient(inst);
    stats.measured = composition.measured;

    size_t l = layout.ell, n = layout.n;
    bool dedup = false;
    for (const auto & row : inst.constraints())
        if (row.tag() == "range[s].cap")
            dedup = true;
    size_t nonedges = 0;
    auto active = dedup ? family.original_t : family.t();
    for (int i = 0; i < active; ++i)
        nonedges += n * (n - 1) / 2 - family.graphs[i].num_edges();

    // one partial per term plus result = z_last; a single term binds directly
    auto chain_rows = [](size_t terms) -> size_t { return terms == 0 ? 0 : terms == 1 ? 2 : 2 * (terms + 1); };
    auto chain_vars = [](size_t terms) -> size_t { return terms >= 2 ? terms : 0; };
    stats.ledger = {
        {"selector", 2, 2 + (dedup ? 1u : 0u)},
        {"bits", l, 0},
        {"binary_chain", chain_vars(l), chain_rows(l)},
        {"products", 2 * l * l, 0},
        {"multiplication", l * l - l, 4 * (l * l - l) + 2 * l},
        {"square_chain", chain_vars(l * l), chain_rows(l * l)},
        {"indicator", n, 2 * n},
        {"nonedge", 0, nonedges},
        {"target", 1 + chain_vars(n), chain_rows(n) + 1}};
    stats.ledger_variables = composed_variable_count(layout.n, layout.ell);
    stats.variable_bound = 5 * (n + l * l) + 3;

    int64_t t = layout.t;
    stats.coefficient_bound = std::max({4 * t, 2 * t * layout.n, 2 * t * t, int64_t{layout.k} + layout.n});
    return stats;
}

auto CompositionStats::to_report() const -> string
{
    string out;
    out += "t=" + to_string(t) + "\n";
    out += "original_t=" + to_string(original_t) + "\n";
    out += "ell=" + to_string(ell) + "\n";
    out += "n=" + to_string(n) + "\n";
    out += "k=" + to_string(k) + "\n";
    out += "variables=" + to_string(variables) + "\n";
    out += "constraints=" + to_string(constraints) + "\n";
    out += "max_abs_coefficient=" + max_abs_coefficient.to_string() + "\n";
    out += "coefficient_bound=" + to_string(coefficient_bound) + "\n";
    out += "ledger_variables=" + to_string(ledger_variables) + "\n";
    out += "variable_bound=" + to_string(variable_bound) + "\n";
    for (size_t i = 0; i < measured.size(); ++i) {
        out += "family." + measured[i].family + ".vars=" + to_string(measured[i].vars) + "\n";
        out += "family." + measured[i].family + ".rows=" + to_string(measured[i].rows) + "\n";
    }
    out += string{"ledger_matches="} + (ledger_matches() ? "true" : "false") + "\n";
    out += string{"within_bounds="} + (within_bounds() ? "true" : "false") + "\n";
    return out;
}
