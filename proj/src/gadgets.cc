#include <silp/error.hh>
#include <silp/gadgets.hh>

#include <algorithm>
#include <optional>
#include <stdexcept>

using namespace silp;

using std::int64_t;
using std::pair;
using std::string;
using std::to_string;
using std::vector;

auto GadgetEmission::absorb(const GadgetEmission & inner) -> void
{
    new_vars.insert(new_vars.end(), inner.new_vars.begin(), inner.new_vars.end());
    new_constraints.insert(new_constraints.end(), inner.new_constraints.begin(), inner.new_constraints.end());
}

auto silp::split_equality(const vector<Term> & lhs, const Rational & rhs, const string & tag) -> std::array<LinearConstraint, 2>
{
    if (lhs.empty())
        throw std::invalid_argument{"split_equality needs at least one term"};
    LinearConstraint upper{lhs, rhs, tag + ".le"};
    return {upper, upper.negated().with_tag(tag + ".ge")};
}

GadgetSession::GadgetSession(InstanceBuilder & builder, string prefix) :
    _builder(builder),
    _prefix(std::move(prefix))
{
}

auto GadgetSession::open(const string & kind) -> GadgetEmission
{
    GadgetEmission e;
    e.gadget_id = _prefix + kind + to_string(_counters[kind]++);
    return e;
}

auto GadgetSession::fresh(GadgetEmission & e, const string & role, int64_t lower, int64_t upper) -> VarId
{
    auto name = e.gadget_id + "." + role;
    auto id = _builder.add_var(name, lower, upper);
    e.new_vars.push_back(NewVar{id, name, lower, upper});
    e.notes[role] = id;
    return id;
}

auto GadgetSession::emit(GadgetEmission & e, LinearConstraint row, int arity) -> void
{
    if (row.sparsity() > static_cast<std::size_t>(arity))
        throw Error{ErrorCode::SparsityViolation, "gadget row " + row.tag() + " has " + to_string(row.sparsity()) +
                " variables, arity is " + to_string(arity)};
    _builder.add_row(row);
    e.new_constraints.push_back(std::move(row));
}

auto GadgetSession::emit_equality(GadgetEmission & e, const vector<Term> & lhs, const Rational & rhs, const string & tag, int arity) -> void
{
    for (auto & row : split_equality(lhs, rhs, tag))
        emit(e, std::move(row), arity);
}

auto GadgetSession::chain_sum(const vector<pair<Rational, VarId>> & terms, VarId result, int arity) -> GadgetEmission
{
    if (arity < 3)
        throw Error{ErrorCode::ArityTooSmall, "chain_sum needs arity >= 3, got " + to_string(arity)};
    if (terms.empty())
        throw std::invalid_argument{"chain_sum needs at least one term"};
    for (const auto & [coef, _] : terms)
        if (! coef.is_integer())
            throw Error{ErrorCode::NonIntegerCoefficient, "chain_sum coefficient " + coef.to_string()};

    auto e = open("chain");
    const auto & vars = _builder.vars();

    if (terms.size() == 1) {
        emit_equality(e, {{result, Rational{1}}, {terms[0].second, -terms[0].first}}, Rational{}, e.gadget_id + ".eq[result]", arity);
        return e;
    }

    // interval of a partial sum: the fresh variable's box
    auto range_of = [&](const pair<Rational, VarId> & term) -> pair<int64_t, int64_t> {
        const auto & v = vars[term.second];
        auto c = static_cast<int64_t>(term.first.numerator());
        auto a = c * v.lower, b = c * v.upper;
        return {std::min(a, b), std::max(a, b)};
    };

    // z_0 = term_0, z_j = z_{j-1} + term_j, result = z_last
    int64_t lo = 0, hi = 0;
    std::optional<VarId> previous;
    for (std::size_t j = 0; j < terms.size(); ++j) {
        auto [a, b] = range_of(terms[j]);
        lo += a;
        hi += b;
        auto role = "z" + to_string(j);
        auto z = fresh(e, role, lo, hi);
        vector<Term> lhs{{z, Rational{1}}, {terms[j].second, -terms[j].first}};
        if (previous)
            lhs.emplace_back(*previous, Rational{-1});
        emit_equality(e, lhs, Rational{}, e.gadget_id + ".eq[" + role + "]", arity);
        previous = z;
    }

    emit_equality(e, {{result, Rational{1}}, {*previous, Rational{-1}}}, Rational{}, e.gadget_id + ".eq[result]", arity);
    return e;
}

auto GadgetSession::multiplication(VarId s_i, VarId s_j, VarId s_ij, VarId d_ij, int arity) -> GadgetEmission
{
    if (arity < 3)
        throw Error{ErrorCode::ArityTooSmall, "multiplication needs arity >= 3, got " + to_string(arity)};
    const auto & vars = _builder.vars();
    for (auto id : {s_i, s_j, s_ij, d_ij}) {
        const auto & v = vars[id];
        if (v.lower != 0 || v.upper != 1)
            throw Error{ErrorCode::BoxMismatch, "multiplication needs {0,1} boxes, " + v.name + " has " +
                    to_string(v.lower) + ".." + to_string(v.upper)};
    }

    auto e = open("mul");
    // 2 s_ij - s_i - s_j + d_ij = 0
    LinearConstraint full{{{s_ij, Rational{2}}, {s_i, Rational{-1}}, {s_j, Rational{-1}}, {d_ij, Rational{1}}}, Rational{}};
    if (full.sparsity() <= static_cast<std::size_t>(arity)) {
        vector<Term> lhs(full.terms().begin(), full.terms().end());
        emit_equality(e, lhs, Rational{}, e.gadget_id + ".eq[product]", arity);
        return e;
    }

    auto w = fresh(e, "w", 0, 2);
    emit_equality(e, {{w, Rational{1}}, {s_i, Rational{-1}}, {s_j, Rational{-1}}}, Rational{}, e.gadget_id + ".eq[w]", arity);
    emit_equality(e, {{s_ij, Rational{2}}, {w, Rational{-1}}, {d_ij, Rational{1}}}, Rational{}, e.gadget_id + ".eq[product]", arity);
    return e;
}

auto GadgetSession::square(VarId s, VarId r_out, int ell, int arity) -> GadgetEmission
{
    if (arity < 3)
        throw Error{ErrorCode::ArityTooSmall, "square needs arity >= 3, got " + to_string(arity)};
    if (ell < 0 || ell > 30)
        throw Error{ErrorCode::NotPowerOfTwo, "ell = " + to_string(ell) + " out of range"};
    const auto & vars = _builder.vars();
    int64_t t = int64_t{1} << ell;
    const auto & sv = vars[s];
    if (sv.lower != 0 || sv.upper + 1 != t) {
        auto width = sv.upper + 1;
        if (sv.lower == 0 && width > 0 && (width & (width - 1)) != 0)
            throw Error{ErrorCode::NotPowerOfTwo, sv.name + " has box 0.." + to_string(sv.upper) + ", width is not a power of two"};
        throw Error{ErrorCode::BoxMismatch, sv.name + " must have box 0.." + to_string(t - 1)};
    }
    const auto & rv = vars[r_out];
    if (rv.lower != 0 || rv.upper != (t - 1) * (t - 1))
        throw Error{ErrorCode::BoxMismatch, rv.name + " must have box 0.." + to_string((t - 1) * (t - 1))};

    auto e = open("sq");
    if (ell == 0)
        return e;

    vector<VarId> bits;
    vector<pair<Rational, VarId>> expansion;
    for (int i = 0; i < ell; ++i) {
        bits.push_back(fresh(e, "s_" + to_string(i), 0, 1));
        expansion.emplace_back(Rational{int64_t{1} << i}, bits.back());
    }
    auto binary = chain_sum(expansion, s, arity);
    e.absorb(binary);

    vector<vector<VarId>> products(ell, vector<VarId>(ell)), slacks(ell, vector<VarId>(ell));
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j)
            products[i][j] = fresh(e, "s_" + to_string(i) + "_" + to_string(j), 0, 1);
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j)
            slacks[i][j] = fresh(e, "d_" + to_string(i) + "_" + to_string(j), 0, 1);

    vector<pair<Rational, VarId>> weighted;
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j) {
            e.absorb(multiplication(bits[i], bits[j], products[i][j], slacks[i][j], arity));
            weighted.emplace_back(Rational{int64_t{1} << (i + j)}, products[i][j]);
        }

    e.absorb(chain_sum(weighted, r_out, arity));
    return e;
}

auto GadgetSession::point_exclusion(const vector<VarId> & support, const vector<int64_t> & point,
    int64_t d, int arity, AuxBox aux) -> GadgetEmission
{
    if (arity < 3)
        throw Error{ErrorCode::ArityTooSmall, "point exclusion needs arity >= 3, got " + to_string(arity)};
    if (d < 2)
        throw Error{ErrorCode::DLessThanTwo, "point exclusion needs d >= 2, got " + to_string(d)};
    if (support.size() != point.size())
        throw std::invalid_argument{"point and support differ in length"};
    if (support.size() > static_cast<std::size_t>(arity))
        throw Error{ErrorCode::SupportTooLarge, "support of " + to_string(support.size()) + " variables exceeds r = " + to_string(arity)};
    const auto & vars = _builder.vars();
    for (std::size_t i = 0; i < support.size(); ++i) {
        const auto & v = vars[support[i]];
        if (v.lower != 0 || v.upper != d - 1)
            throw Error{ErrorCode::BoxMismatch, v.name + " must have box 0.." + to_string(d - 1)};
        if (point[i] < 0 || point[i] > d - 1)
            throw Error{ErrorCode::PointOutOfBox, "coordinate " + to_string(point[i]) + " for " + v.name + " outside 0.." + to_string(d - 1)};
    }

    auto e = open("px");
    int64_t t_upper = aux == AuxBox::Binary ? 1 : d - 1;
    Rational dd{d};
    vector<Term> dummies;
    for (std::size_t i = 0; i < support.size(); ++i) {
        auto k = to_string(i);
        auto s = fresh(e, "s" + k, 0, d - 1);
        auto t = fresh(e, "t" + k, 0, t_upper);
        auto tc = fresh(e, "tc" + k, 0, t_upper);
        auto x = support[i];
        Rational p{point[i]};
        // x - s + d t = p, written with t = 1 - tc on the >= side
        emit(e, LinearConstraint{{{x, Rational{1}}, {s, Rational{-1}}, {t, dd}}, p, e.gadget_id + ".eq[" + k + "].le"}, arity);
        emit(e, LinearConstraint{{{x, Rational{-1}}, {s, Rational{1}}, {tc, dd}}, dd - p, e.gadget_id + ".eq[" + k + "].ge"}, arity);
        emit_equality(e, {{t, Rational{1}}, {tc, Rational{1}}}, Rational{1}, e.gadget_id + ".complement[" + k + "]", arity);
        dummies.emplace_back(s, Rational{-1});
    }
    emit(e, LinearConstraint{dummies, Rational{-1}, e.gadget_id + ".moved"}, arity);
    return e;
}
