#include "bgc/rational.hpp"

#include "bgc/error.hpp"

#include <cctype>
#include <string>

namespace bgc {

std::string to_string(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw FormatError("expected digits in '" + std::string(whole) + "'");
  cpp_int value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw FormatError("invalid number '" + std::string(whole) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  Rational value;
  if (dot == std::string_view::npos) {
    value = Rational(parse_digits(text, whole));
  } else {
    const auto int_part = text.substr(0, dot);
    const auto frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) {
      throw FormatError("invalid number '" + std::string(whole) + "'");
    }
    cpp_int scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const cpp_int ip = int_part.empty() ? cpp_int(0) : parse_digits(int_part, whole);
    const cpp_int fp = frac_part.empty() ? cpp_int(0) : parse_digits(frac_part, whole);
    value = Rational(ip * scale + fp, scale);
  }
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw FormatError("empty number");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text, text);
  const Rational num = parse_decimal(text.substr(0, slash), text);
  const Rational den = parse_decimal(text.substr(slash + 1), text);
  if (den == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

}  // namespace bgc
