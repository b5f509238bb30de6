#pragma once

#include <silp/graph.hh>
#include <silp/instance.hh>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace silp
{
    /// Clique instances sharing vertex count and target size k.
    struct GraphFamily
    {
        std::vector<Graph> graphs;
        int k = 0;
        /// Number of graphs before padding to a power of two.
        int original_t = 0;

        [[nodiscard]] auto t() const -> int { return static_cast<int>(graphs.size()); }
        [[nodiscard]] auto n() const -> int { return graphs.empty() ? 0 : graphs.front().n_vertices(); }
        /// log2(t); only meaningful once normalized.
        [[nodiscard]] auto ell() const -> int;
    };

    /// Pads by repeating the last graph until t is a power of two.
    auto normalize_family(std::vector<Graph> graphs, int k) -> GraphFamily;

    /// Reads the manifest and its graphs; relative graph paths resolve against
    /// the manifest's directory. Not normalized.
    auto load_family(const std::filesystem::path & manifest_path) -> std::pair<std::vector<Graph>, int>;

    struct ComposeOptions
    {
        /// Drop the non-edge rows of padding copies and cap s at original_t - 1.
        bool dedup_padding = false;
        unsigned threads = 1;
    };

    /// Where every symbol of the construction lives in the composed instance.
    struct CompositionLayout
    {
        int t = 0, ell = 0, n = 0, k = 0;
        VarId s;
        VarId r;
        std::vector<VarId> bits;
        std::vector<std::vector<VarId>> products;
        std::vector<std::vector<VarId>> slacks;
        std::vector<VarId> y;
        VarId y_sum;
        std::vector<VarId> chain_aux;
    };

    struct FamilyCount
    {
        std::string family;
        std::size_t vars = 0;
        std::size_t rows = 0;

        auto operator==(const FamilyCount &) const -> bool = default;
    };

    struct Composition
    {
        IlpInstance instance;
        CompositionLayout layout;
        /// Variables and rows actually emitted per constraint family.
        std::vector<FamilyCount> measured;
    };

    /// 3-row-sparse instance feasible iff some graph of the family has a k-clique.
    auto compose(const GraphFamily & family, const ComposeOptions & options = {}) -> Composition;

    /// C = { v : y_v = 2ts - r + 2 } for a feasible assignment.
    auto decode_clique(const Composition & composition, const Assignment & values) -> std::vector<int>;

    struct CompositionStats
    {
        int t = 0, original_t = 0, ell = 0, n = 0, k = 0;
        std::size_t variables = 0;
        std::size_t constraints = 0;
        Rational max_abs_coefficient;
        std::vector<FamilyCount> measured;
        /// Closed-form expectation for each family.
        std::vector<FamilyCount> ledger;
        std::size_t ledger_variables = 0;
        /// 5 (n + ell^2) + 3.
        std::size_t variable_bound = 0;
        /// max(4t, 2tn, 2t^2, k + n).
        std::int64_t coefficient_bound = 0;

        [[nodiscard]] auto ledger_matches() const -> bool { return measured == ledger; }
        [[nodiscard]] auto within_bounds() const -> bool;
        /// Flat key=value lines.
        [[nodiscard]] auto to_report() const -> std::string;
    };

    auto composition_stats(const Composition & composition, const GraphFamily & family) -> CompositionStats;

    /// Closed-form variable count of compose for given n and ell.
    auto composed_variable_count(int n, int ell) -> std::size_t;
}
