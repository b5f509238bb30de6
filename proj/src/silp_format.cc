#include <silp/error.hh>
#include <silp/silp_format.hh>

#include <charconv>
#include <set>
#include <sstream>

using namespace silp;

using std::int64_t;
using std::optional;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

namespace
{
    auto fail(std::size_t line_no, const string & what) -> Error
    {
        return Error{ErrorCode::ParseError, "line " + to_string(line_no) + ": " + what};
    }

    auto split_words(string_view text) -> vector<string_view>
    {
        vector<string_view> words;
        std::size_t pos = 0;
        while (pos < text.size()) {
            while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r'))
                ++pos;
            auto start = pos;
            while (pos < text.size() && ! (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r'))
                ++pos;
            if (pos > start)
                words.push_back(text.substr(start, pos - start));
        }
        return words;
    }

    auto to_int(string_view word, std::size_t line_no) -> int64_t
    {
        int64_t value = 0;
        auto first = word.data(), last = word.data() + word.size();
        if (! word.empty() && word[0] == '+')
            ++first;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last || first == last)
            throw fail(line_no, "expected an integer, got '" + string{word} + "'");
        return value;
    }

    auto to_rational(string_view word, std::size_t line_no) -> Rational
    {
        try {
            return Rational::parse(word);
        }
        catch (const Error &) {
            throw fail(line_no, "expected a number, got '" + string{word} + "'");
        }
    }

    auto parse_constraint(string_view rest, const VarTable & vars, std::size_t line_no) -> LinearConstraint
    {
        auto colon = rest.find(':');
        if (colon == string_view::npos)
            throw fail(line_no, "constraint without ':'");
        auto tag_words = split_words(rest.substr(0, colon));
        if (tag_words.size() != 1 || ! is_valid_tag(tag_words[0]))
            throw fail(line_no, "bad constraint tag");
        string tag{tag_words[0]};

        auto words = split_words(rest.substr(colon + 1));
        if (words.size() < 3 || words[words.size() - 2] != "<=")
            throw fail(line_no, "constraint must end in '<= <rhs>'");
        Rational rhs = to_rational(words.back(), line_no);
        words.resize(words.size() - 2);

        vector<Term> terms;
        if (words.size() == 1 && words[0] == "0")
            return LinearConstraint{terms, rhs, tag};

        std::set<VarId> seen;
        auto add_term = [&](string_view word, bool negate) {
            auto star = word.find('*');
            Rational coef{1};
            string_view name = word;
            if (star != string_view::npos) {
                coef = to_rational(word.substr(0, star), line_no);
                name = word.substr(star + 1);
            }
            else if (word.starts_with('-')) {
                coef = Rational{-1};
                name = word.substr(1);
            }
            if (coef.is_zero())
                throw Error{ErrorCode::ZeroCoefficient, "line " + to_string(line_no) + ": zero coefficient in '" + string{word} + "'"};
            auto id = vars.find(name);
            if (! id)
                throw Error{ErrorCode::UnknownVariable, "line " + to_string(line_no) + ": unknown variable '" + string{name} + "'"};
            if (! seen.insert(*id).second)
                throw Error{ErrorCode::DuplicateTerm, "line " + to_string(line_no) + ": variable '" + string{name} + "' repeated"};
            terms.emplace_back(*id, negate ? -coef : coef);
        };

        add_term(words[0], false);
        if (words.size() % 2 != 1)
            throw fail(line_no, "terms must be separated by '+' or '-'");
        for (std::size_t i = 1; i < words.size(); i += 2) {
            if (words[i] != "+" && words[i] != "-")
                throw fail(line_no, "expected '+' or '-', got '" + string{words[i]} + "'");
            add_term(words[i + 1], words[i] == "-");
        }
        return LinearConstraint{terms, rhs, tag};
    }
}

auto silp::parse_silp(std::istream & in) -> IlpInstance
{
    VarTable vars;
    vector<LinearConstraint> rows;
    optional<int64_t> r, d;
    bool have_header = false;

    string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        string_view line{raw};
        if (auto hash = line.find('#'); hash != string_view::npos)
            line = line.substr(0, hash);
        auto words = split_words(line);
        if (words.empty())
            continue;

        if (! have_header) {
            if (words.size() != 2 || words[0] != "silp" || words[1] != "1")
                throw fail(line_no, "expected header 'silp 1'");
            have_header = true;
            continue;
        }

        if (words[0] == "param") {
            if (words.size() != 3 || (words[1] != "r" && words[1] != "d"))
                throw fail(line_no, "expected 'param r <int>' or 'param d <int>'");
            auto & slot = words[1] == "r" ? r : d;
            if (slot)
                throw fail(line_no, "parameter given twice");
            slot = to_int(words[2], line_no);
        }
        else if (words[0] == "var") {
            if (words.size() != 4)
                throw fail(line_no, "expected 'var <name> <lower> <upper>'");
            if (! rows.empty())
                throw fail(line_no, "variables must be declared before constraints");
            try {
                vars.add(string{words[1]}, to_int(words[2], line_no), to_int(words[3], line_no));
            }
            catch (const Error & e) {
                if (e.code() == ErrorCode::ParseError)
                    throw;
                throw Error{e.code(), "line " + to_string(line_no) + ": " + e.what()};
            }
        }
        else if (words[0] == "con") {
            auto rest = line.substr(line.find("con") + 3);
            rows.push_back(parse_constraint(rest, vars, line_no));
        }
        else
            throw fail(line_no, "unknown directive '" + string{words[0]} + "'");
    }

    if (! have_header)
        throw fail(line_no, "missing header 'silp 1'");
    return build_instance(std::move(vars), std::move(rows), r, d);
}

auto silp::parse_silp(string_view text) -> IlpInstance
{
    std::istringstream in{string{text}};
    return parse_silp(in);
}

auto silp::serialize_silp(const IlpInstance & instance) -> string
{
    string out = "silp 1\n";
    if (instance.declared_r())
        out += "param r " + to_string(*instance.declared_r()) + "\n";
    if (instance.declared_d())
        out += "param d " + to_string(*instance.declared_d()) + "\n";
    for (const auto & v : instance.vars())
        out += "var " + v.name + " " + to_string(v.lower) + " " + to_string(v.upper) + "\n";

    const auto & vars = instance.vars();
    for (const auto & row : instance.constraints()) {
        out += "con " + row.tag() + ":";
        bool first = true;
        for (const auto & [id, coef] : row.terms()) {
            if (first)
                out += " " + coef.to_string();
            else if (coef.sign() < 0)
                out += " - " + (-coef).to_string();
            else
                out += " + " + coef.to_string();
            out += "*" + vars[id].name;
            first = false;
        }
        if (first)
            out += " 0";
        out += " <= " + row.rhs().to_string() + "\n";
    }
    return out;
}
