#pragma once

#include <silp/instance.hh>

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace silp
{
    struct NewVar
    {
        VarId id;
        std::string name;
        std::int64_t lower = 0;
        std::int64_t upper = 0;
    };

    /// What one gadget added to the builder: fresh variables, rows, and a
    /// role map naming the interesting fresh variables.
    struct GadgetEmission
    {
        std::string gadget_id;
        std::vector<NewVar> new_vars;
        std::vector<LinearConstraint> new_constraints;
        std::map<std::string, VarId> notes;

        auto absorb(const GadgetEmission & inner) -> void;
    };

    /// `lhs = rhs` as the pair `lhs <= rhs`, `-lhs <= -rhs`.
    auto split_equality(const std::vector<Term> & lhs, const Rational & rhs, const std::string & tag)
        -> std::array<LinearConstraint, 2>;

    /// Box of the auxiliary t variables in point exclusion.
    enum class AuxBox
    {
        /// t, t' in {0,1}.
        Binary,
        /// t, t' in {0..d-1}, keeping every box canonical. {0,1} is still forced.
        Uniform
    };

    /// Emits gadgets into a builder. Fresh names are `<gadget id>.<role>` with
    /// gadget ids unique within the session. Single owner.
    class GadgetSession
    {
    public:
        explicit GadgetSession(InstanceBuilder & builder, std::string prefix = {});

        /// result = sum coef * var through a chain of partial sums, every row
        /// on at most `arity` variables. One term needs no partials.
        auto chain_sum(const std::vector<std::pair<Rational, VarId>> & terms, VarId result, int arity) -> GadgetEmission;

        /// 2 s_ij - s_i - s_j + d_ij = 0 over {0,1} variables, so s_ij = s_i * s_j.
        /// With arity 3 a fresh w = s_i + s_j keeps rows on three variables.
        auto multiplication(VarId s_i, VarId s_j, VarId s_ij, VarId d_ij, int arity) -> GadgetEmission;

        /// r_out = s^2 for s in {0..2^ell - 1} via bits, pairwise products and
        /// a weighted chain.
        auto square(VarId s, VarId r_out, int ell, int arity) -> GadgetEmission;

        /// Forbids exactly `point` on `support` (boxes {0..d-1}):
        /// x_i = p_i + s_i - d t_i, t_i + t'_i = 1, sum s_i >= 1.
        auto point_exclusion(const std::vector<VarId> & support, const std::vector<std::int64_t> & point,
            std::int64_t d, int arity, AuxBox aux = AuxBox::Binary) -> GadgetEmission;

    private:
        auto open(const std::string & kind) -> GadgetEmission;
        auto fresh(GadgetEmission & e, const std::string & role, std::int64_t lower, std::int64_t upper) -> VarId;
        auto emit(GadgetEmission & e, LinearConstraint row, int arity) -> void;
        auto emit_equality(GadgetEmission & e, const std::vector<Term> & lhs, const Rational & rhs,
            const std::string & tag, int arity) -> void;

        InstanceBuilder & _builder;
        std::string _prefix;
        std::map<std::string, int> _counters;
    };
}
