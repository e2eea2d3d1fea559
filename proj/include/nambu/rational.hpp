#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace nambu {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational coefficient field. cpp_rational keeps the denominator
/// positive and the fraction reduced after every operation.
using Rational = boost::multiprecision::cpp_rational;

/// Canonical "num/den" rendering, denominator always present ("3/1", "-2/5").
std::string rational_to_string(const Rational& r);

/// Parses "n" or "n/d"; throws ParseError on anything else or d == 0.
Rational rational_from_string(const std::string& s);

double rational_to_double(const Rational& r);

/// r^k for k >= 0.
Rational rational_pow(const Rational& r, int k);

} // namespace nambu
