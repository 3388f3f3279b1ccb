#include <doctest.h>

#include "core/rational.hpp"

using chainstore::Rational;

TEST_CASE("rational arithmetic and normalization") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(1, 3));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("5/7") == Rational(5, 7));
  CHECK(Rational::parse("0.30") == Rational(3, 10));
  CHECK(Rational::parse("0.714285") == Rational(714285, 1000000));
  CHECK(Rational::parse("-1.25e-2") == Rational(-1, 80));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse(" 1/2 ") == Rational(1, 2));
  CHECK(Rational::parse("2e3") == Rational(2000));
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
}

TEST_CASE("rational to double and exact from double") {
  CHECK(Rational(1, 2).to_double() == 0.5);
  CHECK(Rational::from_double_exact(0.5) == Rational(1, 2));
  CHECK(Rational::from_double_exact(0.25) == Rational(1, 4));
  CHECK(Rational::from_double_exact(3.0) == Rational(3));
  // 0.3 is not exactly representable; the binary expansion is preserved, not
  // the decimal intent.
  CHECK(Rational::from_double_exact(0.3) != Rational(3, 10));
}

TEST_CASE("rational overflow detection") {
  const Rational big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * Rational(4), std::overflow_error);
  CHECK_THROWS_AS(Rational(INT64_MAX - 1) + Rational(2), std::overflow_error);
}
