#include <doctest.h>

#include "fusionforge/rational.hpp"

using fusionforge::Rational;

TEST_CASE("rational arithmetic and normalization") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(7, 12) * Rational(3, 7) == Rational(1, 4));
    CHECK(Rational(1, 2) / Rational(3, 2) == Rational(1, 3));
    CHECK(Rational(-7, 3).floor() == -3);
    CHECK(Rational(-7, 3).mod1() == Rational(2, 3));
    CHECK(Rational(5, 4).mod1() == Rational(1, 4));
    CHECK(Rational::parse("-3/60") == Rational(-1, 20));
    CHECK(Rational::parse("4") == Rational(4));
    CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("exp2pi hits axis points exactly") {
    CHECK(fusionforge::exp2pi(Rational(1, 2)) == std::complex<double>(-1.0, 0.0));
    CHECK(fusionforge::exp2pi(Rational(3, 2)) == std::complex<double>(-1.0, 0.0));
    CHECK(fusionforge::exp2pi(Rational(0)) == std::complex<double>(1.0, 0.0));
    CHECK(std::abs(fusionforge::exp2pi(Rational(1, 3)) -
                   std::polar(1.0, 2.0 * M_PI / 3.0)) < 1e-15);
}
