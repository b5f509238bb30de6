#include <silp/error.hh>
#include <silp/rational.hh>

#include <boost/integer/common_factor_rt.hpp>

#include <cctype>
#include <utility>

using namespace silp;

using std::string;
using std::string_view;

namespace
{
    auto parse_integer(string_view text, string_view whole) -> BigInt
    {
        if (text.empty())
            throw Error{ErrorCode::ParseError, "bad number '" + string{whole} + "'"};
        std::size_t pos = 0;
        bool negative = false;
        if (text[0] == '-' || text[0] == '+') {
            negative = text[0] == '-';
            pos = 1;
        }
        if (pos == text.size())
            throw Error{ErrorCode::ParseError, "bad number '" + string{whole} + "'"};
        BigInt value = 0;
        for (; pos < text.size(); ++pos) {
            if (! std::isdigit(static_cast<unsigned char>(text[pos])))
                throw Error{ErrorCode::ParseError, "bad number '" + string{whole} + "'"};
            value *= 10;
            value += text[pos] - '0';
        }
        return negative ? BigInt{-value} : value;
    }
}

Rational::Rational(std::int64_t value) :
    _num(value)
{
}

Rational::Rational(BigInt value) :
    _num(std::move(value))
{
}

Rational::Rational(BigInt numerator, BigInt denominator) :
    _num(std::move(numerator)),
    _den(std::move(denominator))
{
    if (_den == 0)
        throw std::domain_error{"rational with zero denominator"};
    normalise();
}

auto Rational::parse(string_view text) -> Rational
{
    auto slash = text.find('/');
    if (slash == string_view::npos)
        return Rational{parse_integer(text, text)};
    auto den_text = text.substr(slash + 1);
    if (! den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
        throw Error{ErrorCode::ParseError, "signed denominator in '" + string{text} + "'"};
    auto den = parse_integer(den_text, text);
    if (den == 0)
        throw Error{ErrorCode::ParseError, "zero denominator in '" + string{text} + "'"};
    return Rational{parse_integer(text.substr(0, slash), text), den};
}

auto Rational::normalise() -> void
{
    if (_den < 0) {
        _num = -_num;
        _den = -_den;
    }
    if (_num == 0) {
        _den = 1;
        return;
    }
    BigInt g = boost::integer::gcd(_num, _den);
    if (g < 0)
        g = -g;
    if (g != 1) {
        _num /= g;
        _den /= g;
    }
}

auto Rational::floor() const -> BigInt
{
    BigInt q = _num / _den;
    if (_num < 0 && q * _den != _num)
        --q;
    return q;
}

auto Rational::ceil() const -> BigInt
{
    BigInt q = _num / _den;
    if (_num > 0 && q * _den != _num)
        ++q;
    return q;
}

auto Rational::abs() const -> Rational
{
    Rational result = *this;
    if (result._num < 0)
        result._num = -result._num;
    return result;
}

auto silp::ceil_log2(const BigInt & value) -> std::uint64_t
{
    if (value <= 1)
        return 0;
    BigInt below = value - 1;
    return boost::multiprecision::msb(below) + 1;
}

auto Rational::encoding_bits() const -> std::uint64_t
{
    BigInt magnitude = _num < 0 ? BigInt{-_num} : _num;
    return 1 + ceil_log2(magnitude + 1) + ceil_log2(_den + 1);
}

auto Rational::to_string() const -> string
{
    if (_den == 1)
        return _num.str();
    return _num.str() + "/" + _den.str();
}

auto Rational::operator-() const -> Rational
{
    Rational result = *this;
    result._num = -result._num;
    return result;
}

auto Rational::operator+=(const Rational & other) -> Rational &
{
    if (_den == other._den)
        _num += other._num;
    else {
        _num = _num * other._den + other._num * _den;
        _den *= other._den;
    }
    normalise();
    return *this;
}

auto Rational::operator-=(const Rational & other) -> Rational &
{
    return *this += -other;
}

auto Rational::operator*=(const Rational & other) -> Rational &
{
    _num *= other._num;
    _den *= other._den;
    normalise();
    return *this;
}

auto Rational::operator/=(const Rational & other) -> Rational &
{
    if (other._num == 0)
        throw std::domain_error{"rational division by zero"};
    _num *= other._den;
    _den *= other._num;
    normalise();
    return *this;
}

auto silp::operator<=>(const Rational & a, const Rational & b) -> std::strong_ordering
{
    BigInt lhs = a._num * b._den, rhs = b._num * a._den;
    if (lhs < rhs)
        return std::strong_ordering::less;
    if (lhs > rhs)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

auto silp::operator<<(std::ostream & s, const Rational & r) -> std::ostream &
{
    return s << r.to_string();
}
