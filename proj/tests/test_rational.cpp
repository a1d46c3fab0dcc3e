#include "wh/rational.hpp"

#include <doctest.h>

#include <stdexcept>

using wh::Rational;

TEST_CASE("rationals are kept in lowest terms with a positive denominator")
{
    const Rational r(6, -8);
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 4);
    CHECK(r.to_string() == "-3/4");
    CHECK(Rational(4, 2).to_string() == "2");
    CHECK(Rational(0, 5) == Rational(0));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("parsing accepts integers and fractions")
{
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse(" -3/9 ") == Rational(-1, 3));
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK_THROWS(Rational::parse("1/"));
    CHECK_THROWS(Rational::parse("abc"));
    CHECK_THROWS(Rational::parse("1/0"));
}

TEST_CASE("field operations and order")
{
    const Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(b < a);
    CHECK(-a < b);
    CHECK(wh::min(a, b) == b);
    CHECK(wh::max(a, b) == a);
    CHECK_THROWS(a / Rational(0));
}

TEST_CASE("floor, abs and sign")
{
    CHECK(Rational(7, 2).floor() == Rational(3));
    CHECK(Rational(-7, 2).floor() == Rational(-4));
    CHECK(Rational(-7, 2).abs() == Rational(7, 2));
    CHECK(Rational(-1, 9).sign() == -1);
    CHECK(Rational(0).sign() == 0);
}

TEST_CASE("conversion to machine integers checks range")
{
    CHECK(Rational(-42).to_int64() == -42);
    CHECK_THROWS_AS(Rational(1, 2).to_int64(), std::domain_error);
    Rational big(1);
    for (int i = 0; i < 70; ++i) big *= Rational(2);
    CHECK_THROWS_AS(big.to_int64(), std::overflow_error);
    CHECK(Rational(3, 7).den64() == 7);
    CHECK(Rational(3, 7).num64() == 3);
}

TEST_CASE("equal values hash equally")
{
    CHECK(std::hash<Rational>{}(Rational(2, 4)) == std::hash<Rational>{}(Rational(1, 2)));
}
