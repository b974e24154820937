#pragma once
// Exact rational numbers backed by GMP.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace desiree {

using Rational = mpq_class;

// Parses "12", "-3", "1.25", "80%" (percent divides by 100) and "3/8".
// Returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

// Decimal text when the expansion terminates, otherwise "n/d".
// "0.595", "1", "-2.5", "1/3".
std::string to_string(const Rational& r);

// Rounded decimal with at most `digits` fractional digits, trailing zeros trimmed.
std::string to_decimal(const Rational& r, int digits = 6);

double to_double(const Rational& r);

// Exact conversion of a finite double.
Rational from_double(double v);

}  // namespace desiree
