#include "desiree/rational.hpp"

#include <doctest.h>

using desiree::Rational;
using desiree::parse_rational;

TEST_CASE("decimal, percent and fraction literals") {
  CHECK(*parse_rational("12") == 12);
  CHECK(*parse_rational("-3") == -3);
  CHECK(*parse_rational("1.25") == Rational(5, 4));
  CHECK(*parse_rational("80%") == Rational(4, 5));
  CHECK(*parse_rational("3/8") == Rational(3, 8));
  CHECK(*parse_rational(".5") == Rational(1, 2));
}

TEST_CASE("leading zeros are decimal, not octal") {
  CHECK(*parse_rational("0.75") == Rational(3, 4));
  CHECK(*parse_rational("010") == 10);
  CHECK(*parse_rational("09") == 9);
  CHECK(*parse_rational("0.075") == Rational(3, 40));
}

TEST_CASE("malformed literals") {
  for (const char* s : {"", "abc", "1.2.3", "1/0", "%", "-", "1e5", "."}) CHECK_FALSE(parse_rational(s));
}

TEST_CASE("printing") {
  using desiree::to_string;
  CHECK(to_string(Rational(119, 200)) == "0.595");
  CHECK(to_string(Rational(1)) == "1");
  CHECK(to_string(Rational(-5, 2)) == "-2.5");
  CHECK(to_string(Rational(1, 3)) == "1/3");
  CHECK(desiree::to_decimal(Rational(2, 3), 4) == "0.6667");
  CHECK(desiree::to_decimal(Rational(1, 2), 4) == "0.5");
}

TEST_CASE("double conversion is exact") {
  CHECK(desiree::from_double(0.5) == Rational(1, 2));
  CHECK(desiree::to_double(desiree::from_double(0.1)) == 0.1);
}
