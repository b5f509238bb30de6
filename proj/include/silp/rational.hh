#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace silp
{
    using BigInt = boost::multiprecision::cpp_int;

    /// Exact fraction, always in lowest terms with a positive denominator.
    class Rational
    {
    public:
        Rational() = default;
        Rational(std::int64_t value);
        Rational(BigInt value);
        Rational(BigInt numerator, BigInt denominator);

        /// Accepts "p", "-p" or "p/q" with decimal integers.
        static auto parse(std::string_view text) -> Rational;

        [[nodiscard]] auto numerator() const -> const BigInt & { return _num; }
        [[nodiscard]] auto denominator() const -> const BigInt & { return _den; }

        [[nodiscard]] auto is_zero() const -> bool { return _num == 0; }
        [[nodiscard]] auto is_integer() const -> bool { return _den == 1; }
        [[nodiscard]] auto sign() const -> int { return _num.sign(); }

        [[nodiscard]] auto floor() const -> BigInt;
        [[nodiscard]] auto ceil() const -> BigInt;
        [[nodiscard]] auto abs() const -> Rational;

        /// Size in bits used by the encoding metric:
        /// 1 + ceil(log2(|p| + 1)) + ceil(log2(q + 1)).
        [[nodiscard]] auto encoding_bits() const -> std::uint64_t;

        [[nodiscard]] auto to_string() const -> std::string;

        auto operator-() const -> Rational;
        auto operator+=(const Rational & other) -> Rational &;
        auto operator-=(const Rational & other) -> Rational &;
        auto operator*=(const Rational & other) -> Rational &;
        auto operator/=(const Rational & other) -> Rational &;

        friend auto operator+(Rational a, const Rational & b) -> Rational { return a += b; }
        friend auto operator-(Rational a, const Rational & b) -> Rational { return a -= b; }
        friend auto operator*(Rational a, const Rational & b) -> Rational { return a *= b; }
        friend auto operator/(Rational a, const Rational & b) -> Rational { return a /= b; }

        friend auto operator==(const Rational & a, const Rational & b) -> bool
        {
            return a._num == b._num && a._den == b._den;
        }
        friend auto operator<=>(const Rational & a, const Rational & b) -> std::strong_ordering;

    private:
        auto normalise() -> void;

        BigInt _num = 0;
        BigInt _den = 1;
    };

    auto operator<=>(const Rational & a, const Rational & b) -> std::strong_ordering;
    auto operator<<(std::ostream & s, const Rational & r) -> std::ostream &;

    /// ceil(log2(value)) for value >= 1, and 0 for value 0.
    auto ceil_log2(const BigInt & value) -> std::uint64_t;
}
