#pragma once

#include <silp/instance.hh>

#include <cstdint>
#include <string>
#include <vector>

namespace silp
{
    /// Rows sharing one exact support set, keyed by the sorted support.
    struct SupportGroup
    {
        std::vector<VarId> support;
        std::vector<std::size_t> rows;

        auto operator==(const SupportGroup &) const -> bool = default;
    };

    struct Grouping
    {
        /// Sorted by support tuple.
        std::vector<SupportGroup> groups;
        /// Some row reads `0 <= rhs` with rhs < 0.
        bool immediate_infeasible = false;
        /// Rows `0 <= rhs` with rhs >= 0, dropped.
        std::vector<std::size_t> trivial_rows;
    };

    auto group_by_support(const IlpInstance & instance) -> Grouping;

    /// Folds every group on fewer than min(n, r) variables into a group of
    /// exactly that size: the first such group containing its support, else
    /// the support padded with the lowest-index missing variables. At most
    /// C(n, r) groups remain.
    auto cover_by_r_sets(Grouping grouping, std::size_t n, std::int64_t r) -> Grouping;

    /// Points of {0..d-1}^q, in lexicographic order, violating some row of the group.
    auto infeasible_points(const SupportGroup & group, const IlpInstance & instance, std::int64_t d)
        -> std::vector<std::vector<std::int64_t>>;

    enum class KernelMode
    {
        /// Point-exclusion gadgets replace every row.
        Gadgets,
        /// A group excludes its whole box, or a row reads 0 <= negative.
        CanonicalInfeasible,
        /// d = 1: the single point was evaluated directly.
        SinglePointFeasible,
        SinglePointInfeasible
    };

    auto mode_name(KernelMode mode) -> std::string;

    struct GroupReport
    {
        std::vector<VarId> support;
        std::vector<std::size_t> rows;
        std::size_t excluded_points = 0;
    };

    struct KernelReport
    {
        KernelMode mode = KernelMode::Gadgets;
        std::size_t n = 0, m = 0;
        std::int64_t r = 0, d = 0;
        std::vector<GroupReport> groups;
        std::size_t excluded_points = 0;
        std::size_t emitted_variables = 0;
        std::size_t emitted_constraints = 0;
        std::uint64_t encoding_bits_before = 0;
        std::uint64_t encoding_bits_after = 0;
        /// Names of the input variables, for the report.
        std::vector<std::string> var_names;

        /// Flat key=value lines with stable keys.
        [[nodiscard]] auto to_report() const -> std::string;
        [[nodiscard]] auto csv_header() const -> std::string;
        [[nodiscard]] auto to_csv_row(const std::string & label) const -> std::string;
    };

    struct KernelOptions
    {
        /// Workers computing infeasible points per group. Output is identical.
        unsigned threads = 1;
    };

    struct KernelResult
    {
        IlpInstance kernel;
        KernelReport report;
    };

    /// Replaces every row of an r-sparse instance over {0..d-1}^n by point
    /// exclusion gadgets, one per locally infeasible point of each support.
    /// The input variables keep their ids; fresh variables follow them.
    auto kernelize(const IlpInstance & instance, std::int64_t r, std::int64_t d, const KernelOptions & options = {}) -> KernelResult;

    struct SizeCheck
    {
        bool passed = false;
        BigInt constraint_bound;
        BigInt variable_bound;
        /// d^r n^r log2(dn) in bits, rounded up.
        BigInt bits_scale;
        std::int64_t bits_constant = 0;
        BigInt constraint_margin;
        BigInt variable_margin;
        BigInt bits_margin;

        [[nodiscard]] auto to_report() const -> std::string;
    };

    /// Constant for the encoding-size check, fixed from the fixture corpus.
    constexpr std::int64_t kernel_bits_constant = 64;

    /// Checks (4r+1) d^r C(n,r) rows, 3r d^r n^r fresh variables and
    /// bits <= C d^r n^r log2(dn). For n < r the instance is treated as padded
    /// with unused variables up to n = r.
    auto kernel_size_check(const KernelReport & report, std::size_t n, std::int64_t d, std::int64_t r,
        std::int64_t bits_constant = kernel_bits_constant) -> SizeCheck;
}
