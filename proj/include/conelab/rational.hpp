#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace conelab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Exact arbitrary-precision rational scalar.
///
/// Always kept in lowest terms with a positive denominator. Every arithmetic
/// operation is exact; dividing by zero throws std::domain_error. Serializes
/// as "p/q", with "/q" omitted when the denominator is 1.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : value_(n) {}
    Rational(const BigInt& n) : value_(n) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        // cpp_rational requires a positive denominator; it then canonicalizes.
        value_ = den < 0 ? BigRat(-num, -den) : BigRat(num, den);
    }
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    static Rational parse(std::string_view text) {
        const auto slash = text.find('/');
        if (slash == std::string_view::npos)
            return Rational(BigInt(std::string(text)));
        return Rational(BigInt(std::string(text.substr(0, slash))),
                        BigInt(std::string(text.substr(slash + 1))));
    }

    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }

    bool is_zero() const { return value_ == 0; }
    int sign() const { return value_ < 0 ? -1 : (value_ > 0 ? 1 : 0); }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    friend Rational operator-(const Rational& a) { return Rational(BigRat(-a.value_)); }
    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(BigRat(a.value_ + b.value_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(BigRat(a.value_ - b.value_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(BigRat(a.value_ * b.value_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(BigRat(a.value_ / b.value_));
    }

    Rational& operator+=(const Rational& b) { value_ += b.value_; return *this; }
    Rational& operator-=(const Rational& b) { value_ -= b.value_; return *this; }
    Rational& operator*=(const Rational& b) { value_ *= b.value_; return *this; }
    Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (a.value_ > b.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// Nonnegative integer power, exact.
    static Rational pow(const Rational& base, std::uint64_t e) {
        Rational acc(1), b = base;
        while (e != 0) {
            if (e & 1) acc *= b;
            b *= b;
            e >>= 1;
        }
        return acc;
    }

    std::string to_string() const {
        std::string s = numerator().str();
        if (denominator() != 1) s += "/" + denominator().str();
        return s;
    }

    /// Exact decimal rendering with at most `significant` significant digits,
    /// round half away from zero, trailing zeros trimmed. Used only for plot
    /// emission; never fed back into arithmetic.
    std::string to_decimal_string(int significant = 20) const;

private:
    explicit Rational(BigRat v) : value_(std::move(v)) {}
    BigRat value_;
};

inline std::string Rational::to_decimal_string(int significant) const {
    if (significant < 1) significant = 1;
    if (is_zero()) return "0";
    const BigInt a = boost::multiprecision::abs(numerator());
    const BigInt b = denominator();

    // Exponent e: number of digits before the decimal point (may be <= 0 for
    // values below 1). 10^(e-1) <= a/b < 10^e.
    int e = 0;
    BigInt scaled = a;
    if (a >= b) {
        while (scaled >= b) { scaled /= 10; ++e; }
    } else {
        BigInt up = a;
        while (up < b) { up *= 10; --e; }
        ++e;
    }

    // Want `significant` digits: value ~ d.ddd * 10^(e-1), so keep
    // f = significant - e fractional digits (may be negative).
    const int f = significant - e;
    BigInt digits;  // round(a * 10^f / b), half away from zero
    if (f >= 0) {
        BigInt num = a;
        for (int i = 0; i < f; ++i) num *= 10;
        digits = (2 * num + b) / (2 * b);
    } else {
        BigInt den = b;
        for (int i = 0; i < -f; ++i) den *= 10;
        digits = (2 * a + den) / (2 * den);
        for (int i = 0; i < -f; ++i) digits *= 10;  // restore magnitude
    }

    std::string ds = digits.str();
    std::string out;
    if (f <= 0) {
        out = ds;
    } else if (static_cast<int>(ds.size()) > f) {
        out = ds.substr(0, ds.size() - f) + "." + ds.substr(ds.size() - f);
    } else {
        out = "0." + std::string(f - ds.size(), '0') + ds;
    }
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return (sign() < 0 ? "-" : "") + out;
}

}  // namespace conelab
