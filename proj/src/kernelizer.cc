#include <silp/error.hh>
#include <silp/gadgets.hh>
#include <silp/kernelizer.hh>

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

using namespace silp;

using std::int64_t;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

auto silp::group_by_support(const IlpInstance & instance) -> Grouping
{
    Grouping result;
    std::map<vector<VarId>, vector<size_t>> by_support;
    for (size_t i = 0; i < instance.num_constraints(); ++i) {
        const auto & row = instance.constraints()[i];
        if (row.sparsity() == 0) {
            if (row.rhs().sign() < 0)
                result.immediate_infeasible = true;
            else
                result.trivial_rows.push_back(i);
            continue;
        }
        by_support[row.support()].push_back(i);
    }
    for (auto & [support, rows] : by_support)
        result.groups.push_back(SupportGroup{support, std::move(rows)});
    return result;
}

auto silp::cover_by_r_sets(Grouping grouping, size_t n, int64_t r) -> Grouping
{
    auto width = std::min(n, static_cast<size_t>(r));
    std::map<vector<VarId>, vector<size_t>> covered;
    vector<const SupportGroup *> narrow;
    for (const auto & group : grouping.groups) {
        if (group.support.size() == width)
            covered[group.support] = group.rows;
        else
            narrow.push_back(&group);
    }
    for (const auto * group : narrow) {
        auto host = std::find_if(covered.begin(), covered.end(), [&](const auto & entry) {
            return std::includes(entry.first.begin(), entry.first.end(), group->support.begin(), group->support.end());
        });
        if (host == covered.end()) {
            auto support = group->support;
            for (uint32_t i = 0; support.size() < width; ++i)
                if (! std::binary_search(group->support.begin(), group->support.end(), VarId{i}))
                    support.push_back(VarId{i});
            std::sort(support.begin(), support.end());
            host = covered.emplace(std::move(support), vector<size_t>{}).first;
        }
        host->second.insert(host->second.end(), group->rows.begin(), group->rows.end());
    }
    grouping.groups.clear();
    for (auto & [support, rows] : covered) {
        std::sort(rows.begin(), rows.end());
        grouping.groups.push_back(SupportGroup{support, std::move(rows)});
    }
    return grouping;
}

auto silp::infeasible_points(const SupportGroup & group, const IlpInstance & instance, int64_t d) -> vector<vector<int64_t>>
{
    vector<vector<int64_t>> result;
    auto q = group.support.size();
    Assignment values(instance.num_vars(), 0);
    vector<int64_t> point(q, 0);
    while (true) {
        for (size_t i = 0; i < q; ++i)
            values[group.support[i].index] = point[i];
        bool violated = std::any_of(group.rows.begin(), group.rows.end(),
            [&](size_t row) { return ! instance.constraints()[row].satisfied_by(values); });
        if (violated)
            result.push_back(point);

        // lexicographic successor, last coordinate fastest
        size_t pos = q;
        while (pos > 0) {
            --pos;
            if (++point[pos] < d)
                break;
            point[pos] = 0;
            if (pos == 0)
                return result;
        }
        if (q == 0)
            return result;
    }
}

auto silp::mode_name(KernelMode mode) -> string
{
    switch (mode) {
        case KernelMode::Gadgets: return "gadgets";
        case KernelMode::CanonicalInfeasible: return "canonical_infeasible";
        case KernelMode::SinglePointFeasible: return "single_point_feasible";
        case KernelMode::SinglePointInfeasible: return "single_point_infeasible";
    }
    return "unknown";
}

namespace
{
    auto power(int64_t base, int64_t exponent) -> BigInt
    {
        BigInt result = 1;
        for (int64_t i = 0; i < exponent; ++i)
            result *= base;
        return result;
    }

    auto binomial(int64_t n, int64_t k) -> BigInt
    {
        if (k < 0 || k > n)
            return 0;
        BigInt result = 1;
        for (int64_t i = 1; i <= k; ++i)
            result = result * (n - k + i) / i;
        return result;
    }

    /// Input variables plus `x <= -1` on the first one (or on a fresh x when
    /// there are none).
    auto canonical_infeasible(const IlpInstance & instance, int64_t r, int64_t d) -> IlpInstance
    {
        VarTable vars = instance.vars();
        auto target = vars.empty() ? vars.add("x", 0, d - 1) : VarId{0};
        vector<LinearConstraint> rows{LinearConstraint{{{target, Rational{1}}}, Rational{-1}, "infeasible"}};
        return build_instance(std::move(vars), std::move(rows), r, d);
    }

    /// A gadget prefix that no input variable name starts with.
    auto fresh_prefix(const IlpInstance & instance) -> string
    {
        for (int level = 0;; ++level) {
            auto prefix = "k" + to_string(level) + ".";
            bool clash = std::any_of(instance.vars().begin(), instance.vars().end(),
                [&](const Variable & v) { return v.name.rfind(prefix, 0) == 0; });
            if (! clash)
                return prefix;
        }
    }
}

auto silp::kernelize(const IlpInstance & instance, int64_t r, int64_t d, const KernelOptions & options) -> KernelResult
{
    if (r < 3)
        throw Error{ErrorCode::RTooSmall, "r = " + to_string(r) + " < 3; such instances are solvable directly in O(m d)"};
    if (d < 1)
        throw Error{ErrorCode::DLessThanTwo, "d = " + to_string(d) + " must be at least 1"};
    for (const auto & v : instance.vars())
        if (v.lower != 0 || v.upper != d - 1)
            throw Error{ErrorCode::NotCanonicalBox, v.name + " has box " + to_string(v.lower) + ".." + to_string(v.upper) +
                    ", expected 0.." + to_string(d - 1) + "; shift it first"};
    for (const auto & row : instance.constraints())
        if (row.sparsity() > static_cast<size_t>(r))
            throw Error{ErrorCode::SparsityViolation, "row " + row.tag() + " has " + to_string(row.sparsity()) +
                    " variables, more than r = " + to_string(r)};

    KernelResult result;
    auto & report = result.report;
    report.n = instance.num_vars();
    report.m = instance.num_constraints();
    report.r = r;
    report.d = d;
    report.encoding_bits_before = encoding_size_bits(instance);
    for (const auto & v : instance.vars())
        report.var_names.push_back(v.name);

    auto finish_infeasible = [&](KernelMode mode) {
        report.mode = mode;
        result.kernel = canonical_infeasible(instance, r, d);
        report.emitted_variables = result.kernel.num_vars() - instance.num_vars();
        report.emitted_constraints = 1;
        report.encoding_bits_after = encoding_size_bits(result.kernel);
        return result;
    };

    if (d == 1) {
        Assignment zero(instance.num_vars(), 0);
        if (! evaluate(instance, zero).feasible())
            return finish_infeasible(KernelMode::SinglePointInfeasible);
        report.mode = KernelMode::SinglePointFeasible;
        result.kernel = build_instance(instance.vars(), {}, r, d);
        report.encoding_bits_after = 0;
        return result;
    }

    auto grouping = cover_by_r_sets(group_by_support(instance), instance.num_vars(), r);
    if (grouping.immediate_infeasible)
        return finish_infeasible(KernelMode::CanonicalInfeasible);

    auto & groups = grouping.groups;
    vector<vector<vector<int64_t>>> points(groups.size());
    auto work = [&](size_t g) { points[g] = infeasible_points(groups[g], instance, d); };
    if (options.threads > 1 && groups.size() > 1) {
        std::atomic<size_t> next{0};
        vector<std::thread> pool;
        for (unsigned w = 0; w < options.threads; ++w)
            pool.emplace_back([&]() {
                for (auto g = next.fetch_add(1); g < groups.size(); g = next.fetch_add(1))
                    work(g);
            });
        for (auto & th : pool)
            th.join();
    }
    else
        for (size_t g = 0; g < groups.size(); ++g)
            work(g);

    for (size_t g = 0; g < groups.size(); ++g) {
        report.groups.push_back(GroupReport{groups[g].support, groups[g].rows, points[g].size()});
        report.excluded_points += points[g].size();
    }
    for (size_t g = 0; g < groups.size(); ++g)
        if (BigInt{points[g].size()} == power(d, static_cast<int64_t>(groups[g].support.size())))
            return finish_infeasible(KernelMode::CanonicalInfeasible);

    InstanceBuilder builder;
    for (const auto & v : instance.vars())
        builder.add_var(v.name, v.lower, v.upper);
    GadgetSession session{builder, fresh_prefix(instance)};
    for (size_t g = 0; g < groups.size(); ++g)
        for (const auto & p : points[g]) {
            auto emission = session.point_exclusion(groups[g].support, p, d, static_cast<int>(r), AuxBox::Uniform);
            report.emitted_variables += emission.new_vars.size();
            report.emitted_constraints += emission.new_constraints.size();
        }

    report.mode = KernelMode::Gadgets;
    result.kernel = builder.build(r, d);
    report.encoding_bits_after = encoding_size_bits(result.kernel);
    return result;
}

auto KernelReport::to_report() const -> string
{
    string out;
    out += "mode=" + mode_name(mode) + "\n";
    out += "n=" + std::to_string(n) + "\n";
    out += "m=" + std::to_string(m) + "\n";
    out += "r=" + std::to_string(r) + "\n";
    out += "d=" + std::to_string(d) + "\n";
    out += "box_mode=bounds\n";
    out += "groups=" + std::to_string(groups.size()) + "\n";
    out += "excluded_points=" + std::to_string(excluded_points) + "\n";
    out += "emitted_variables=" + std::to_string(emitted_variables) + "\n";
    out += "emitted_constraints=" + std::to_string(emitted_constraints) + "\n";
    out += "encoding_bits_before=" + std::to_string(encoding_bits_before) + "\n";
    out += "encoding_bits_after=" + std::to_string(encoding_bits_after) + "\n";
    for (size_t g = 0; g < groups.size(); ++g) {
        auto key = "group." + std::to_string(g);
        string support, rows;
        for (auto id : groups[g].support)
            support += (support.empty() ? "" : ",") + (id.index < var_names.size() ? var_names[id.index] : std::to_string(id.index));
        for (auto row : groups[g].rows)
            rows += (rows.empty() ? "" : ",") + std::to_string(row);
        out += key + ".support=" + support + "\n";
        out += key + ".rows=" + rows + "\n";
        out += key + ".excluded_points=" + std::to_string(groups[g].excluded_points) + "\n";
    }
    return out;
}

auto KernelReport::csv_header() const -> string
{
    return "instance,mode,n,m,r,d,groups,excluded_points,emitted_variables,emitted_constraints,encoding_bits_before,encoding_bits_after\n";
}

auto KernelReport::to_csv_row(const string & label) const -> string
{
    return label + "," + mode_name(mode) + "," + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(r) + "," +
        std::to_string(d) + "," + std::to_string(groups.size()) + "," + std::to_string(excluded_points) + "," +
        std::to_string(emitted_variables) + "," + std::to_string(emitted_constraints) + "," +
        std::to_string(encoding_bits_before) + "," + std::to_string(encoding_bits_after) + "\n";
}

auto silp::kernel_size_check(const KernelReport & report, size_t n, int64_t d, int64_t r, int64_t bits_constant) -> SizeCheck
{
    SizeCheck check;
    auto padded = std::max<int64_t>(static_cast<int64_t>(n), r);
    auto dr = power(d, r);
    check.constraint_bound = (4 * r + 1) * dr * binomial(padded, r);
    check.variable_bound = 3 * r * dr * power(padded, r);
    auto dn = std::max<int64_t>(d * padded, 2);
    check.bits_scale = dr * power(padded, r) * BigInt{ceil_log2(BigInt{dn})};
    check.bits_constant = bits_constant;

    check.constraint_margin = check.constraint_bound - BigInt{report.emitted_constraints};
    check.variable_margin = check.variable_bound - BigInt{report.emitted_variables};
    check.bits_margin = bits_constant * check.bits_scale - BigInt{report.encoding_bits_after};
    check.passed = check.constraint_margin >= 0 && check.variable_margin >= 0 && check.bits_margin >= 0;
    return check;
}

auto SizeCheck::to_report() const -> string
{
    string out;
    out += string{"size_check="} + (passed ? "pass" : "fail") + "\n";
    out += "constraint_bound=" + constraint_bound.str() + "\n";
    out += "constraint_margin=" + constraint_margin.str() + "\n";
    out += "variable_bound=" + variable_bound.str() + "\n";
    out += "variable_margin=" + variable_margin.str() + "\n";
    out += "bits_constant=" + std::to_string(bits_constant) + "\n";
    out += "bits_scale=" + bits_scale.str() + "\n";
    out += "bits_margin=" + bits_margin.str() + "\n";
    return out;
}
