#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace wh {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Backed by GMP.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value);  // NOLINT: implicit on purpose, integers are rationals
    Rational(std::int64_t num, std::int64_t den);

    /// Accepts "a", "-a" and "a/b" (whitespace around the tokens is ignored).
    static Rational parse(std::string_view text);

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_integer() const { return value_.get_den() == 1; }
    /// Throws std::domain_error on a non-integer and std::overflow_error outside 64 bits.
    std::int64_t to_int64() const;
    /// Denominator as a machine integer (throws on overflow).
    std::int64_t den64() const;
    std::int64_t num64() const;

    Rational floor() const;
    Rational abs() const;
    int sign() const { return sgn(value_); }

    std::string to_string() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

    std::size_t hash() const;

private:
    explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }
    mpq_class value_{0};
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace wh

template <>
struct std::hash<wh::Rational> {
    std::size_t operator()(const wh::Rational& r) const noexcept { return r.hash(); }
};
