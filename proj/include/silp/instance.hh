#pragma once

#include <silp/rational.hh>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace silp
{
    /// Dense index of a variable inside its VarTable.
    struct VarId
    {
        std::uint32_t index = 0;

        auto operator<=>(const VarId &) const = default;
    };

    struct Variable
    {
        std::string name;
        std::int64_t lower = 0;
        std::int64_t upper = 0;

        [[nodiscard]] auto width() const -> std::int64_t { return upper - lower + 1; }
        auto operator==(const Variable &) const -> bool = default;
    };

    auto is_valid_name(std::string_view name) -> bool;
    auto is_valid_tag(std::string_view tag) -> bool;

    /// Ordered variable declarations. Iteration order is declaration order.
    class VarTable
    {
    public:
        auto add(std::string name, std::int64_t lower, std::int64_t upper) -> VarId;

        [[nodiscard]] auto size() const -> std::size_t { return _vars.size(); }
        [[nodiscard]] auto empty() const -> bool { return _vars.empty(); }
        [[nodiscard]] auto operator[](VarId id) const -> const Variable & { return _vars.at(id.index); }
        [[nodiscard]] auto find(std::string_view name) const -> std::optional<VarId>;
        [[nodiscard]] auto contains(VarId id) const -> bool { return id.index < _vars.size(); }

        [[nodiscard]] auto begin() const { return _vars.begin(); }
        [[nodiscard]] auto end() const { return _vars.end(); }

        auto operator==(const VarTable & other) const -> bool { return _vars == other._vars; }

    private:
        std::vector<Variable> _vars;
        std::unordered_map<std::string, VarId> _by_name;
    };

    using Assignment = std::vector<std::int64_t>;
    using Term = std::pair<VarId, Rational>;

    /// One row `sum coef * x <= rhs`. Zero coefficients are never stored.
    class LinearConstraint
    {
    public:
        LinearConstraint() = default;

        /// Repeated variables are merged by summing their coefficients.
        LinearConstraint(const std::vector<Term> & terms, Rational rhs, std::string tag = {});

        [[nodiscard]] auto terms() const -> const std::map<VarId, Rational> & { return _terms; }
        [[nodiscard]] auto rhs() const -> const Rational & { return _rhs; }
        [[nodiscard]] auto tag() const -> const std::string & { return _tag; }
        [[nodiscard]] auto sparsity() const -> std::size_t { return _terms.size(); }
        [[nodiscard]] auto support() const -> std::vector<VarId>;
        [[nodiscard]] auto coefficient(VarId id) const -> Rational;

        [[nodiscard]] auto activity(const Assignment & values) const -> Rational;
        [[nodiscard]] auto satisfied_by(const Assignment & values) const -> bool;

        /// The row with every coefficient and the rhs negated (same tag).
        [[nodiscard]] auto negated() const -> LinearConstraint;
        [[nodiscard]] auto with_tag(std::string tag) const -> LinearConstraint;

        auto operator==(const LinearConstraint &) const -> bool = default;

    private:
        std::map<VarId, Rational> _terms;
        Rational _rhs;
        std::string _tag;
    };

    /// A validated feasibility instance `Ax <= b` over integer boxes. Immutable.
    class IlpInstance
    {
    public:
        IlpInstance() = default;

        [[nodiscard]] auto vars() const -> const VarTable & { return _vars; }
        [[nodiscard]] auto constraints() const -> const std::vector<LinearConstraint> & { return _constraints; }
        [[nodiscard]] auto num_vars() const -> std::size_t { return _vars.size(); }
        [[nodiscard]] auto num_constraints() const -> std::size_t { return _constraints.size(); }
        [[nodiscard]] auto declared_r() const -> std::optional<std::int64_t> { return _declared_r; }
        [[nodiscard]] auto declared_d() const -> std::optional<std::int64_t> { return _declared_d; }

        /// Largest row support.
        [[nodiscard]] auto sparsity() const -> std::size_t { return _sparsity; }
        /// Largest u - l + 1 over all boxes, 0 when there are no variables.
        [[nodiscard]] auto max_box_width() const -> std::int64_t { return _max_width; }

        auto operator==(const IlpInstance &) const -> bool = default;

    private:
        friend auto build_instance(VarTable, std::vector<LinearConstraint>,
            std::optional<std::int64_t>, std::optional<std::int64_t>) -> IlpInstance;

        VarTable _vars;
        std::vector<LinearConstraint> _constraints;
        std::optional<std::int64_t> _declared_r;
        std::optional<std::int64_t> _declared_d;
        std::size_t _sparsity = 0;
        std::int64_t _max_width = 0;
    };

    /// Validates and freezes an instance. Empty tags become "c<index>".
    auto build_instance(VarTable vars, std::vector<LinearConstraint> constraints,
        std::optional<std::int64_t> r = std::nullopt, std::optional<std::int64_t> d = std::nullopt) -> IlpInstance;

    struct Verdict
    {
        std::vector<std::size_t> violated;

        [[nodiscard]] auto feasible() const -> bool { return violated.empty(); }
    };

    auto evaluate(const IlpInstance & instance, const Assignment & values) -> Verdict;

    struct ShiftResult
    {
        IlpInstance instance;
        /// Per-variable offset: original value = shifted value + shift.
        std::vector<std::int64_t> shift;

        [[nodiscard]] auto unshift(const Assignment & shifted) const -> Assignment;
        [[nodiscard]] auto to_shifted(const Assignment & original) const -> Assignment;
    };

    /// Substitutes x = x' + lower so every box becomes {0..d-1}. Boxes narrower
    /// than d keep their width through an added range row. With no d given the
    /// declared d, or else the widest box, is used.
    auto shift_to_canonical_box(const IlpInstance & instance, std::optional<std::int64_t> d = std::nullopt) -> ShiftResult;

    auto encoding_size_bits(const IlpInstance & instance) -> std::uint64_t;

    /// Adds `x <= upper` and `-x <= -lower` rows for every variable.
    auto materialize_box_rows(const IlpInstance & instance) -> IlpInstance;

    auto max_abs_coefficient(const IlpInstance & instance) -> Rational;

    /// Accumulates variables and rows before freezing them into an IlpInstance.
    class InstanceBuilder
    {
    public:
        auto add_var(std::string name, std::int64_t lower, std::int64_t upper) -> VarId;
        auto add_row(LinearConstraint row) -> void;
        auto add_row(const std::vector<Term> & terms, Rational rhs, std::string tag) -> void;

        [[nodiscard]] auto vars() const -> const VarTable & { return _vars; }
        [[nodiscard]] auto rows() const -> const std::vector<LinearConstraint> & { return _rows; }

        [[nodiscard]] auto build(std::optional<std::int64_t> r = std::nullopt,
            std::optional<std::int64_t> d = std::nullopt) const -> IlpInstance;

    private:
        VarTable _vars;
        std::vector<LinearConstraint> _rows;
    };
}
