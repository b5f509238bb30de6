#pragma once

#include <silp/graph.hh>
#include <silp/instance.hh>

#include <cstdint>
#include <optional>
#include <vector>

namespace silp
{
    enum class VarOrder
    {
        Declaration,
        /// Static order: most row occurrences first, ties by declaration.
        MostConstrainedFirst
    };

    struct SearchConfig
    {
        VarOrder order = VarOrder::Declaration;
        std::uint64_t node_budget = 10'000'000;
        bool find_all = false;
        /// Interval bound propagation. Never changes verdicts, only node counts.
        bool propagate = true;
        /// Workers splitting the first branching variable's values (solve only).
        unsigned threads = 1;
    };

    enum class SolveStatus
    {
        Feasible,
        Infeasible,
        BudgetExhausted
    };

    struct SolveOutcome
    {
        SolveStatus status = SolveStatus::Infeasible;
        /// Lexicographically first feasible assignment under the active order.
        std::optional<Assignment> witness;
        /// Every feasible assignment, sorted, when find_all is set.
        std::vector<Assignment> solutions;
        std::uint64_t nodes = 0;
    };

    /// Complete depth-first search over the boxes. A row is checked once its
    /// last variable is assigned, or earlier through propagation.
    auto solve(const IlpInstance & instance, const SearchConfig & config = {}) -> SolveOutcome;

    /// Projection of the feasible set onto the given variables, deduplicated
    /// and sorted lexicographically. Throws SpaceTooLarge when the node budget
    /// runs out.
    auto enumerate_solutions(const IlpInstance & instance, const std::vector<VarId> & projection,
        const SearchConfig & config = {}) -> std::vector<std::vector<std::int64_t>>;

    /// Lexicographically first k-clique, or nullopt. k > n answers no; k < 1
    /// is rejected with BadK.
    auto has_k_clique(const Graph & graph, int k) -> std::optional<std::vector<int>>;
}
