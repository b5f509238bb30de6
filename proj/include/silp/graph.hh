#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace silp
{
    /// Simple undirected graph on vertices 0..n-1.
    class Graph
    {
    public:
        Graph() = default;
        explicit Graph(int n_vertices);

        auto add_edge(int u, int v) -> void;

        [[nodiscard]] auto n_vertices() const -> int { return _n; }
        [[nodiscard]] auto has_edge(int u, int v) const -> bool;
        [[nodiscard]] auto num_edges() const -> std::size_t;
        /// Edges as (u, v) with u < v, sorted.
        [[nodiscard]] auto edges() const -> std::vector<std::pair<int, int>>;

        auto operator==(const Graph &) const -> bool = default;

    private:
        int _n = 0;
        std::vector<bool> _adj;
    };

    /// DIMACS-like: optional 'c' comment lines, 'p edge <n> <m>', then
    /// 'e <u> <v>' lines with 1-based vertices.
    auto parse_dimacs(std::istream & in) -> Graph;
    auto parse_dimacs(std::string_view text) -> Graph;
    auto write_dimacs(const Graph & g) -> std::string;

    struct FamilyManifest
    {
        int k = 0;
        std::vector<std::filesystem::path> graph_paths;
    };

    /// 'k <int>' then one graph path per line; '#' comments. Relative paths
    /// are resolved against the manifest's directory by load_family_graphs.
    auto parse_manifest(std::istream & in) -> FamilyManifest;

    auto read_graph_file(const std::filesystem::path & path) -> Graph;
}
