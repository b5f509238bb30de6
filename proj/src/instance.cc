#include <silp/error.hh>
#include <silp/instance.hh>

#include <algorithm>
#include <cctype>

using namespace silp;

using std::int64_t;
using std::optional;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

auto silp::is_valid_name(string_view name) -> bool
{
    if (name.empty())
        return false;
    auto first = static_cast<unsigned char>(name[0]);
    if (! (std::isalpha(first) || first == '_'))
        return false;
    return std::all_of(name.begin() + 1, name.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || string_view{"_.,=[]{}'"}.find(c) != string_view::npos;
    });
}

auto silp::is_valid_tag(string_view tag) -> bool
{
    if (tag.empty())
        return false;
    return std::none_of(tag.begin(), tag.end(), [](char c) {
        return c == ':' || c == '#' || std::isspace(static_cast<unsigned char>(c)) || ! std::isprint(static_cast<unsigned char>(c));
    });
}

auto VarTable::add(string name, int64_t lower, int64_t upper) -> VarId
{
    if (! is_valid_name(name))
        throw Error{ErrorCode::InvalidName, "invalid variable name '" + name + "'"};
    if (lower > upper)
        throw Error{ErrorCode::EmptyBox, "variable " + name + " has box " + to_string(lower) + ".." + to_string(upper)};
    if (_by_name.contains(name))
        throw Error{ErrorCode::DuplicateName, "variable " + name + " declared twice"};
    VarId id{static_cast<std::uint32_t>(_vars.size())};
    _by_name.emplace(name, id);
    _vars.push_back(Variable{std::move(name), lower, upper});
    return id;
}

auto VarTable::find(string_view name) const -> optional<VarId>
{
    auto it = _by_name.find(string{name});
    if (it == _by_name.end())
        return std::nullopt;
    return it->second;
}

LinearConstraint::LinearConstraint(const vector<Term> & terms, Rational rhs, string tag) :
    _rhs(std::move(rhs)),
    _tag(std::move(tag))
{
    for (const auto & [id, coef] : terms)
        _terms[id] += coef;
    std::erase_if(_terms, [](const auto & kv) { return kv.second.is_zero(); });
}

auto LinearConstraint::support() const -> vector<VarId>
{
    vector<VarId> result;
    result.reserve(_terms.size());
    for (const auto & [id, _] : _terms)
        result.push_back(id);
    return result;
}

auto LinearConstraint::coefficient(VarId id) const -> Rational
{
    auto it = _terms.find(id);
    return it == _terms.end() ? Rational{} : it->second;
}

auto LinearConstraint::activity(const Assignment & values) const -> Rational
{
    Rational total;
    for (const auto & [id, coef] : _terms)
        total += coef * Rational{values.at(id.index)};
    return total;
}

auto LinearConstraint::satisfied_by(const Assignment & values) const -> bool
{
    return activity(values) <= _rhs;
}

auto LinearConstraint::negated() const -> LinearConstraint
{
    LinearConstraint result = *this;
    for (auto & [_, coef] : result._terms)
        coef = -coef;
    result._rhs = -result._rhs;
    return result;
}

auto LinearConstraint::with_tag(string tag) const -> LinearConstraint
{
    LinearConstraint result = *this;
    result._tag = std::move(tag);
    return result;
}

auto silp::build_instance(VarTable vars, vector<LinearConstraint> constraints, optional<int64_t> r, optional<int64_t> d) -> IlpInstance
{
    if (r && *r < 0)
        throw Error{ErrorCode::SparsityViolation, "declared r must be non-negative"};
    if (d && *d < 1)
        throw Error{ErrorCode::BoxViolation, "declared d must be positive"};

    IlpInstance result;
    for (const auto & v : vars) {
        if (v.lower > v.upper)
            throw Error{ErrorCode::EmptyBox, "variable " + v.name + " has an empty box"};
        if (d && (v.lower != 0 || v.upper != *d - 1))
            throw Error{ErrorCode::BoxViolation, "variable " + v.name + " has box " + to_string(v.lower) + ".." +
                    to_string(v.upper) + " but d = " + to_string(*d)};
        result._max_width = std::max(result._max_width, v.width());
    }

    for (std::size_t i = 0; i < constraints.size(); ++i) {
        auto & row = constraints[i];
        if (row.tag().empty())
            row = row.with_tag("c" + to_string(i));
        else if (! is_valid_tag(row.tag()))
            throw Error{ErrorCode::InvalidName, "invalid constraint tag '" + row.tag() + "'"};
        for (const auto & [id, _] : row.terms())
            if (! vars.contains(id))
                throw Error{ErrorCode::UnknownVariable, "constraint " + row.tag() + " uses unknown variable #" + to_string(id.index)};
        if (r && row.sparsity() > static_cast<std::size_t>(*r))
            throw Error{ErrorCode::SparsityViolation, "constraint " + row.tag() + " has " + to_string(row.sparsity()) +
                    " variables, more than r = " + to_string(*r)};
        result._sparsity = std::max(result._sparsity, row.sparsity());
    }

    result._vars = std::move(vars);
    result._constraints = std::move(constraints);
    result._declared_r = r;
    result._declared_d = d;
    return result;
}

auto silp::evaluate(const IlpInstance & instance, const Assignment & values) -> Verdict
{
    if (values.size() != instance.num_vars())
        throw Error{ErrorCode::DomainViolation, "assignment has " + to_string(values.size()) + " values for " +
                to_string(instance.num_vars()) + " variables"};
    std::uint32_t idx = 0;
    for (const auto & v : instance.vars()) {
        if (values[idx] < v.lower || values[idx] > v.upper)
            throw Error{ErrorCode::DomainViolation, v.name + " = " + to_string(values[idx]) + " outside " +
                    to_string(v.lower) + ".." + to_string(v.upper)};
        ++idx;
    }

    Verdict verdict;
    for (std::size_t i = 0; i < instance.num_constraints(); ++i)
        if (! instance.constraints()[i].satisfied_by(values))
            verdict.violated.push_back(i);
    return verdict;
}

auto ShiftResult::unshift(const Assignment & shifted) const -> Assignment
{
    Assignment result = shifted;
    for (std::size_t i = 0; i < result.size() && i < shift.size(); ++i)
        result[i] += shift[i];
    return result;
}

auto ShiftResult::to_shifted(const Assignment & original) const -> Assignment
{
    Assignment result = original;
    for (std::size_t i = 0; i < result.size() && i < shift.size(); ++i)
        result[i] -= shift[i];
    return result;
}

auto silp::shift_to_canonical_box(const IlpInstance & instance, optional<int64_t> d) -> ShiftResult
{
    int64_t range = d ? *d : instance.declared_d().value_or(std::max<int64_t>(instance.max_box_width(), 1));
    if (range < 1)
        throw Error{ErrorCode::BoxTooWide, "d must be positive"};

    VarTable vars;
    vector<int64_t> shift;
    vector<LinearConstraint> rows;
    for (const auto & v : instance.vars()) {
        if (v.width() > range)
            throw Error{ErrorCode::BoxTooWide, "variable " + v.name + " has width " + to_string(v.width()) +
                    " > d = " + to_string(range)};
        vars.add(v.name, 0, range - 1);
        shift.push_back(v.lower);
    }

    for (const auto & row : instance.constraints()) {
        Rational rhs = row.rhs();
        vector<Term> terms;
        for (const auto & [id, coef] : row.terms()) {
            rhs -= coef * Rational{shift[id.index]};
            terms.emplace_back(id, coef);
        }
        rows.emplace_back(terms, rhs, row.tag());
    }

    std::uint32_t idx = 0;
    for (const auto & v : instance.vars()) {
        if (v.width() < range)
            rows.emplace_back(vector<Term>{{VarId{idx}, Rational{1}}}, Rational{v.width() - 1}, "range[" + v.name + "]");
        ++idx;
    }

    return ShiftResult{build_instance(std::move(vars), std::move(rows), instance.declared_r(), range), std::move(shift)};
}

auto silp::encoding_size_bits(const IlpInstance & instance) -> std::uint64_t
{
    auto name_bits = ceil_log2(BigInt{instance.num_vars()});
    std::uint64_t total = 0;
    for (const auto & row : instance.constraints()) {
        for (const auto & [_, coef] : row.terms())
            total += name_bits + coef.encoding_bits();
        total += row.rhs().encoding_bits();
    }
    return total;
}

auto silp::materialize_box_rows(const IlpInstance & instance) -> IlpInstance
{
    VarTable vars = instance.vars();
    vector<LinearConstraint> rows = instance.constraints();
    std::uint32_t idx = 0;
    for (const auto & v : instance.vars()) {
        rows.emplace_back(vector<Term>{{VarId{idx}, Rational{1}}}, Rational{v.upper}, "box_upper[" + v.name + "]");
        rows.emplace_back(vector<Term>{{VarId{idx}, Rational{-1}}}, Rational{-v.lower}, "box_lower[" + v.name + "]");
        ++idx;
    }
    optional<int64_t> r = instance.declared_r();
    if (r && *r < 1 && ! instance.vars().empty())
        r = 1;
    return build_instance(std::move(vars), std::move(rows), r, instance.declared_d());
}

auto silp::max_abs_coefficient(const IlpInstance & instance) -> Rational
{
    Rational best;
    for (const auto & row : instance.constraints())
        for (const auto & [_, coef] : row.terms())
            best = std::max(best, coef.abs());
    return best;
}

auto InstanceBuilder::add_var(string name, int64_t lower, int64_t upper) -> VarId
{
    return _vars.add(std::move(name), lower, upper);
}

auto InstanceBuilder::add_row(LinearConstraint row) -> void
{
    for (const auto & [id, _] : row.terms())
        if (! _vars.contains(id))
            throw Error{ErrorCode::UnknownVariable, "row " + row.tag() + " uses unknown variable #" + to_string(id.index)};
    _rows.push_back(std::move(row));
}

auto InstanceBuilder::add_row(const vector<Term> & terms, Rational rhs, string tag) -> void
{
    add_row(LinearConstraint{terms, std::move(rhs), std::move(tag)});
}

auto InstanceBuilder::build(optional<int64_t> r, optional<int64_t> d) const -> IlpInstance
{
    return build_instance(_vars, _rows, r, d);
}
