#include <silp/error.hh>
#include <silp/graph.hh>

#include <fstream>
#include <sstream>

using namespace silp;

using std::string;
using std::to_string;
using std::vector;

Graph::Graph(int n_vertices) :
    _n(n_vertices),
    _adj(static_cast<std::size_t>(n_vertices) * static_cast<std::size_t>(n_vertices), false)
{
    if (n_vertices < 0)
        throw Error{ErrorCode::BadGraph, "negative vertex count"};
}

auto Graph::add_edge(int u, int v) -> void
{
    if (u < 0 || v < 0 || u >= _n || v >= _n)
        throw Error{ErrorCode::BadGraph, "edge {" + to_string(u) + "," + to_string(v) + "} out of range"};
    if (u == v)
        throw Error{ErrorCode::BadGraph, "self-loop on vertex " + to_string(u)};
    _adj[u * _n + v] = true;
    _adj[v * _n + u] = true;
}

auto Graph::has_edge(int u, int v) const -> bool
{
    if (u < 0 || v < 0 || u >= _n || v >= _n)
        return false;
    return _adj[u * _n + v];
}

auto Graph::num_edges() const -> std::size_t
{
    return edges().size();
}

auto Graph::edges() const -> vector<std::pair<int, int>>
{
    vector<std::pair<int, int>> result;
    for (int u = 0; u < _n; ++u)
        for (int v = u + 1; v < _n; ++v)
            if (_adj[u * _n + v])
                result.emplace_back(u, v);
    return result;
}

auto silp::parse_dimacs(std::istream & in) -> Graph
{
    Graph g;
    bool have_header = false;
    string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream words{line};
        string kind;
        if (! (words >> kind) || kind == "c")
            continue;
        if (kind == "p") {
            string format;
            long long n = 0, m = 0;
            if (have_header || ! (words >> format >> n >> m) || format != "edge" || n < 0)
                throw Error{ErrorCode::ParseError, "graph line " + to_string(line_no) + ": expected 'p edge <n> <m>'"};
            g = Graph{static_cast<int>(n)};
            have_header = true;
        }
        else if (kind == "e") {
            long long u = 0, v = 0;
            if (! have_header || ! (words >> u >> v))
                throw Error{ErrorCode::ParseError, "graph line " + to_string(line_no) + ": expected 'e <u> <v>' after header"};
            g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
        }
        else
            throw Error{ErrorCode::ParseError, "graph line " + to_string(line_no) + ": unknown line kind '" + kind + "'"};
    }
    if (! have_header)
        throw Error{ErrorCode::ParseError, "graph without 'p edge' header"};
    return g;
}

auto silp::parse_dimacs(std::string_view text) -> Graph
{
    std::istringstream in{string{text}};
    return parse_dimacs(in);
}

auto silp::write_dimacs(const Graph & g) -> string
{
    auto edges = g.edges();
    string out = "p edge " + to_string(g.n_vertices()) + " " + to_string(edges.size()) + "\n";
    for (auto [u, v] : edges)
        out += "e " + to_string(u + 1) + " " + to_string(v + 1) + "\n";
    return out;
}

auto silp::parse_manifest(std::istream & in) -> FamilyManifest
{
    FamilyManifest manifest;
    bool have_k = false;
    string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != string::npos)
            raw.resize(hash);
        std::istringstream words{raw};
        string first;
        if (! (words >> first))
            continue;
        if (! have_k) {
            long long k = 0;
            if (first != "k" || ! (words >> k))
                throw Error{ErrorCode::ParseError, "manifest line " + to_string(line_no) + ": expected 'k <int>'"};
            manifest.k = static_cast<int>(k);
            have_k = true;
            continue;
        }
        string extra;
        if (words >> extra)
            throw Error{ErrorCode::ParseError, "manifest line " + to_string(line_no) + ": one graph path per line"};
        manifest.graph_paths.emplace_back(first);
    }
    if (! have_k)
        throw Error{ErrorCode::ParseError, "manifest without 'k <int>' line"};
    return manifest;
}

auto silp::read_graph_file(const std::filesystem::path & path) -> Graph
{
    std::ifstream in{path};
    if (! in)
        throw Error{ErrorCode::Io, "cannot open graph file " + path.string()};
    return parse_dimacs(in);
}
