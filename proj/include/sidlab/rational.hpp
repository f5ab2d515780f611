#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sidlab {

using Rational = mpq_class;

// Accepts "p/q" or an integer "p". With allow_decimal, also accepts plain
// decimals such as "0.35", converted exactly (7/20).
Rational parse_rational(std::string_view text, bool allow_decimal = false);

// Canonical "p/q" text; integers are printed without a denominator.
std::string format_rational(const Rational &value);

Rational pow(const Rational &base, unsigned exponent);

inline double to_double(const Rational &value) { return value.get_d(); }

// Exact binary value of a finite double.
Rational from_double(double value);

// Best rational approximation with denominator <= max_denominator,
// by continued fractions (last convergent or semiconvergent).
Rational approximate(double value, std::uint64_t max_denominator);

} // namespace sidlab
