#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace bgc {

using Rational = boost::multiprecision::cpp_rational;

/// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Accepts integers ("3"), decimals ("-2.75") and fractions ("16/3").
/// Throws FormatError on anything else.
Rational parse_rational(std::string_view text);

}  // namespace bgc
