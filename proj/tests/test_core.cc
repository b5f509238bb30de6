#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testing.hh"

#include <silp/error.hh>
#include <silp/instance.hh>
#include <silp/silp_format.hh>

using namespace silp;
using namespace silp::testing;

using std::int64_t;
using std::vector;

namespace
{
    auto code_of(auto && f) -> ErrorCode
    {
        try {
            f();
        }
        catch (const Error & e) {
            return e.code();
        }
        FAIL("no silp::Error thrown");
        return ErrorCode::Io;
    }

    auto var(std::uint32_t i) -> VarId { return VarId{i}; }
}

TEST_CASE("rational normal form")
{
    CHECK(Rational::parse("6/4") == Rational{3, 2});
    CHECK(Rational::parse("6/4").denominator() == 2);
    CHECK(Rational::parse("-0").is_zero());
    CHECK(Rational::parse("-0").denominator() == 1);
    CHECK(Rational{2, -4} == Rational::parse("-1/2"));
    CHECK(Rational{2, -4}.denominator() > 0);
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("x"));
    CHECK_THROWS(Rational::parse("1.5"));
}

TEST_CASE("rational arithmetic is exact")
{
    CHECK(Rational{1, 2} + Rational{1, 3} == Rational{5, 6});
    CHECK(Rational{1, 2} - Rational{1, 3} == Rational{1, 6});
    CHECK(Rational{2, 3} * Rational{3, 4} == Rational{1, 2});
    CHECK(Rational{2, 3} / Rational{4, 3} == Rational{1, 2});
    CHECK(Rational{-3, 2}.floor() == -2);
    CHECK(Rational{-3, 2}.ceil() == -1);
    CHECK(Rational{3, 2}.floor() == 1);
    CHECK(Rational{4}.floor() == 4);
    CHECK(Rational{1, 3} < Rational{1, 2});
    CHECK(Rational{-1, 2} < Rational{-1, 3});

    // (a + b) + c == a + (b + c) and friends over a small grid
    vector<Rational> grid;
    for (int p = -3; p <= 3; ++p)
        for (int q = 1; q <= 3; ++q)
            grid.emplace_back(p, q);
    for (const auto & a : grid)
        for (const auto & b : grid) {
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a - b) + b == a);
        }
}

TEST_CASE("rational encoding bits")
{
    CHECK(Rational{0}.encoding_bits() == 2);
    CHECK(Rational{1}.encoding_bits() == 3);
    CHECK(Rational{-1}.encoding_bits() == 3);
    CHECK(Rational{3}.encoding_bits() == 4);
    CHECK(Rational{-5, 3}.encoding_bits() == 6);
    CHECK(ceil_log2(BigInt{0}) == 0);
    CHECK(ceil_log2(BigInt{1}) == 0);
    CHECK(ceil_log2(BigInt{2}) == 1);
    CHECK(ceil_log2(BigInt{5}) == 3);
    CHECK(ceil_log2(BigInt{8}) == 3);
}

TEST_CASE("linear constraint keeps no zeros")
{
    LinearConstraint c{{{var(0), Rational{1}}, {var(1), Rational{2}}, {var(0), Rational{-1}}}, Rational{3}};
    CHECK(c.sparsity() == 1);
    CHECK(c.support() == vector<VarId>{var(1)});
    CHECK(c.coefficient(var(0)).is_zero());
    CHECK(c.negated().rhs() == Rational{-3});
}

TEST_CASE("build_instance examples")
{
    SUBCASE("single variable row")
    {
        VarTable vars;
        vars.add("x", 0, 1);
        auto inst = build_instance(vars, {LinearConstraint{{{var(0), Rational{1}}}, Rational{0}}}, 3);
        CHECK(inst.sparsity() == 1);
        CHECK(inst.max_box_width() == 2);
        CHECK(inst.constraints()[0].tag() == "c0");
    }
    SUBCASE("four variables with r = 3")
    {
        VarTable vars;
        for (auto n : {"x", "y", "z", "w"})
            vars.add(n, 0, 1);
        vector<Term> terms{{var(0), 1}, {var(1), 1}, {var(2), 1}, {var(3), 1}};
        CHECK(code_of([&] { build_instance(vars, {LinearConstraint{terms, Rational{1}}}, 3); }) == ErrorCode::SparsityViolation);
    }
    SUBCASE("inverted box")
    {
        VarTable vars;
        CHECK(code_of([&] { vars.add("x", 2, 0); }) == ErrorCode::EmptyBox);
    }
    SUBCASE("unknown variable")
    {
        VarTable vars;
        vars.add("x", 0, 1);
        CHECK(code_of([&] { build_instance(vars, {LinearConstraint{{{var(5), Rational{1}}}, Rational{0}}}); }) ==
            ErrorCode::UnknownVariable);
    }
    SUBCASE("declared d mismatch")
    {
        VarTable vars;
        vars.add("x", 1, 2);
        CHECK(code_of([&] { build_instance(vars, {}, 3, 2); }) == ErrorCode::BoxViolation);
    }
    SUBCASE("duplicate name")
    {
        VarTable vars;
        vars.add("x", 0, 1);
        CHECK(code_of([&] { vars.add("x", 0, 1); }) == ErrorCode::DuplicateName);
    }
}

TEST_CASE("evaluate examples")
{
    InstanceBuilder b;
    auto x = b.add_var("x", 0, 1);
    b.add_row({{x, Rational{1}}}, Rational{0}, "le");
    auto inst = b.build();
    CHECK(evaluate(inst, {0}).feasible());
    CHECK(evaluate(inst, {1}).violated == vector<std::size_t>{0});
    CHECK(code_of([&] { evaluate(inst, {2}); }) == ErrorCode::DomainViolation);
    CHECK(code_of([&] { evaluate(inst, {}); }) == ErrorCode::DomainViolation);
}

TEST_CASE("multiplication equality rows accept (1,0,1,0)")
{
    // 2 s_ij - s_i - s_j + d_ij = 0 as two rows, order (s_i, s_j, d_ij, s_ij)
    InstanceBuilder b;
    auto si = b.add_var("s_i", 0, 1), sj = b.add_var("s_j", 0, 1), dij = b.add_var("d_ij", 0, 1), sij = b.add_var("s_ij", 0, 1);
    vector<Term> lhs{{sij, 2}, {si, -1}, {sj, -1}, {dij, 1}};
    b.add_row(lhs, Rational{0}, "le");
    b.add_row(LinearConstraint{lhs, Rational{0}}.negated().with_tag("ge"));
    auto inst = b.build();
    CHECK(evaluate(inst, {1, 0, 1, 0}).feasible());
    CHECK_FALSE(evaluate(inst, {1, 0, 0, 0}).feasible());
}

TEST_CASE("encoding size")
{
    CHECK(encoding_size_bits(build_instance({}, {})) == 0);

    InstanceBuilder b;
    auto x = b.add_var("x", 0, 1);
    b.add_row({{x, Rational{1}}}, Rational{1}, "c");
    // ceil(log2 1) + bits(1) + bits(1)
    CHECK(encoding_size_bits(b.build()) == 0 + 3 + 3);

    // n = 3 so names take 2 bits; 2*x - 1*y <= -5/3
    InstanceBuilder c;
    auto p = c.add_var("p", 0, 1), q = c.add_var("q", 0, 1);
    c.add_var("u", 0, 1);
    c.add_row({{p, Rational{2}}, {q, Rational{-1}}}, Rational{-5, 3}, "c");
    CHECK(encoding_size_bits(c.build()) == (2 + 4) + (2 + 3) + 6);
}

TEST_CASE("shift examples")
{
    SUBCASE("x in 3..4, 2x <= 8")
    {
        InstanceBuilder b;
        auto x = b.add_var("x", 3, 4);
        b.add_row({{x, Rational{2}}}, Rational{8}, "c");
        auto shifted = shift_to_canonical_box(b.build(), 2);
        const auto & inst = shifted.instance;
        CHECK(inst.vars()[x].lower == 0);
        CHECK(inst.vars()[x].upper == 1);
        CHECK(inst.constraints().size() == 1);
        CHECK(inst.constraints()[0].coefficient(x) == Rational{2});
        CHECK(inst.constraints()[0].rhs() == Rational{2});
        CHECK(shifted.shift == vector<int64_t>{3});
        CHECK(inst.declared_d() == 2);
    }
    SUBCASE("already canonical")
    {
        InstanceBuilder b;
        auto x = b.add_var("x", 0, 2), y = b.add_var("y", 0, 2);
        b.add_row({{x, Rational{1}}, {y, Rational{-1}}}, Rational{1}, "c");
        auto before = b.build();
        auto shifted = shift_to_canonical_box(before, 3);
        CHECK(shifted.shift == vector<int64_t>{0, 0});
        CHECK(serialize_silp(shifted.instance) == serialize_silp(build_instance(before.vars(), before.constraints(), std::nullopt, 3)));
    }
    SUBCASE("witnesses map by the shift")
    {
        InstanceBuilder b;
        auto x = b.add_var("x", -1, 0), y = b.add_var("y", 5, 6);
        b.add_row({{x, Rational{1}}, {y, Rational{-1}}}, Rational{-6}, "c");
        auto original = b.build();
        auto shifted = shift_to_canonical_box(original, 2);
        auto before = brute_force_solutions(original);
        auto after = brute_force_solutions(shifted.instance);
        CHECK(before == vector<Assignment>{{-1, 5}, {-1, 6}, {0, 6}});
        REQUIRE(after.size() == before.size());
        for (std::size_t i = 0; i < after.size(); ++i) {
            CHECK(shifted.unshift(after[i]) == before[i]);
            CHECK(shifted.to_shifted(before[i]) == after[i]);
        }
    }
    SUBCASE("too wide")
    {
        InstanceBuilder b;
        b.add_var("x", 0, 4);
        CHECK(code_of([&] { shift_to_canonical_box(b.build(), 3); }) == ErrorCode::BoxTooWide);
    }
    SUBCASE("narrow boxes keep their width through a range row")
    {
        InstanceBuilder b;
        b.add_var("x", 2, 3);
        b.add_var("y", 0, 3);
        auto shifted = shift_to_canonical_box(b.build());
        CHECK(shifted.instance.declared_d() == 4);
        CHECK(brute_force_solutions(shifted.instance).size() == 2 * 4);
    }
}

TEST_CASE("shift preserves the verdict on random boxes")
{
    std::mt19937_64 rng{7};
    std::uniform_int_distribution<int> lower(-3, 3), width(1, 4), nvars(1, 5), nrows(0, 5), coef(-3, 3), rhs(-6, 6);
    for (int trial = 0; trial < 300; ++trial) {
        InstanceBuilder b;
        int n = nvars(rng);
        for (int i = 0; i < n; ++i) {
            auto lo = lower(rng);
            b.add_var("v" + std::to_string(i), lo, lo + width(rng) - 1);
        }
        int m = nrows(rng);
        for (int j = 0; j < m; ++j) {
            vector<Term> terms;
            for (int i = 0; i < n; ++i)
                if (auto c = coef(rng); c != 0)
                    terms.emplace_back(var(i), Rational{c});
            b.add_row(terms, Rational{rhs(rng)}, "c" + std::to_string(j));
        }
        auto inst = b.build();
        auto shifted = shift_to_canonical_box(inst, 4);
        auto before = brute_force_solutions(inst);
        auto after = brute_force_solutions(shifted.instance);
        REQUIRE(before.size() == after.size());
        for (std::size_t i = 0; i < after.size(); ++i)
            CHECK(shifted.unshift(after[i]) == before[i]);
    }
}

TEST_CASE("evaluate is monotone under row removal")
{
    std::mt19937_64 rng{11};
    for (int trial = 0; trial < 100; ++trial) {
        auto inst = random_instance(rng, {.n = 4, .d = 3, .m = 5});
        for (const auto & point : box_points(4, 3)) {
            if (! evaluate(inst, point).feasible())
                continue;
            for (std::size_t drop = 0; drop < inst.num_constraints(); ++drop) {
                auto rows = inst.constraints();
                rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(drop));
                CHECK(evaluate(build_instance(inst.vars(), rows), point).feasible());
            }
        }
    }
}

TEST_CASE("materialized box rows do not change the solution set")
{
    InstanceBuilder b;
    auto x = b.add_var("x", -1, 1), y = b.add_var("y", 2, 3);
    b.add_row({{x, Rational{1}}, {y, Rational{1}}}, Rational{3}, "c");
    auto inst = b.build();
    auto rows = materialize_box_rows(inst);
    CHECK(rows.num_constraints() == 5);
    CHECK(rows.constraints()[1].tag() == "box_upper[x]");
    CHECK(brute_force_solutions(rows) == brute_force_solutions(inst));
}

TEST_CASE("silp round trip")
{
    auto text = std::string{
        "silp 1\n"
        "param r 3\n"
        "var x 0 1\n"
        "var y 0 1\n"
        "var z 0 1\n"
        "con sum: 1*x + 1*y + 1*z <= 1\n"
        "con half: 1/2*x - 3*z <= -1/3\n"
        "con empty: 0 <= 4\n"};
    auto inst = parse_silp(text);
    CHECK(inst.num_vars() == 3);
    CHECK(inst.declared_r() == 3);
    CHECK(inst.constraints()[1].coefficient(VarId{0}) == Rational{1, 2});
    CHECK(serialize_silp(inst) == text);
    CHECK(parse_silp(serialize_silp(inst)) == inst);
}

TEST_CASE("silp parser accepts bare names and comments")
{
    auto inst = parse_silp("silp 1 # header\nvar x 0 1\nvar y 0 1\n\ncon c: x - y <= 0\ncon d: -x + 2*y <= 1\n");
    CHECK(inst.constraints()[0].coefficient(VarId{0}) == Rational{1});
    CHECK(inst.constraints()[0].coefficient(VarId{1}) == Rational{-1});
    CHECK(inst.constraints()[1].coefficient(VarId{0}) == Rational{-1});
    CHECK(serialize_silp(inst) == "silp 1\nvar x 0 1\nvar y 0 1\ncon c: 1*x - 1*y <= 0\ncon d: -1*x + 2*y <= 1\n");
}

TEST_CASE("silp parser rejections")
{
    auto code = [](const char * text) { return code_of([&] { parse_silp(text); }); };
    CHECK(code("var x 0 1\n") == ErrorCode::ParseError);
    CHECK(code("silp 1\nvar x 0 1\nvar x 0 1\n") == ErrorCode::DuplicateName);
    CHECK(code("silp 1\nvar x 0 1\ncon c: 1*y <= 0\n") == ErrorCode::UnknownVariable);
    CHECK(code("silp 1\nvar x 0 1\ncon c: 0*x <= 0\n") == ErrorCode::ZeroCoefficient);
    CHECK(code("silp 1\nvar x 0 1\ncon c: 1*x + 2*x <= 0\n") == ErrorCode::DuplicateTerm);
    CHECK(code("silp 1\nvar x 0 1\ncon c: 1*x <=\n") == ErrorCode::ParseError);
    CHECK(code("silp 1\nvar x 1 0\n") == ErrorCode::EmptyBox);
    CHECK(code("silp 1\nvar 9x 0 1\n") == ErrorCode::InvalidName);
    CHECK(code("silp 1\nparam r 2\nvar x 0 1\nvar y 0 1\nvar z 0 1\ncon c: x + y + z <= 1\n") == ErrorCode::SparsityViolation);
}

TEST_CASE("silp round trip on random instances")
{
    std::mt19937_64 rng{3};
    std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        auto base = random_instance(rng, {.n = 5, .d = 3, .m = 6});
        vector<LinearConstraint> rows;
        for (const auto & row : base.constraints()) {
            vector<Term> terms;
            for (const auto & [id, c] : row.terms())
                terms.emplace_back(id, c * Rational{1, den(rng)});
            rows.emplace_back(terms, Rational{num(rng), den(rng)}, row.tag());
        }
        auto inst = build_instance(base.vars(), rows, 3, 3);
        auto text = serialize_silp(inst);
        auto back = parse_silp(text);
        CHECK(back == inst);
        CHECK(serialize_silp(back) == text);
    }
}
