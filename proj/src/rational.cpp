#include "bpmkit/rational.hpp"

#include <stdexcept>

namespace bpmkit {

using boost::multiprecision::cpp_int;

Rational parse_decimal(std::string_view text) {
  auto bad = [&] { return std::invalid_argument("'" + std::string(text) + "' is not a decimal number"); };
  if (text.empty() || text.size() > 64) throw bad();
  cpp_int numerator = 0;
  cpp_int denominator = 1;
  bool seen_dot = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_dot) throw bad();
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      seen_digit = true;
      numerator = numerator * 10 + (c - '0');
      if (seen_dot) denominator *= 10;
    } else {
      throw bad();
    }
  }
  if (!seen_digit) throw bad();
  return Rational(numerator, denominator);
}

std::string to_string(const Rational& r) {
  const auto& num = boost::multiprecision::numerator(r);
  const auto& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::int64_t round_half_up(const Rational& r) {
  Rational shifted = r + Rational(1, 2);
  cpp_int num = boost::multiprecision::numerator(shifted);
  cpp_int den = boost::multiprecision::denominator(shifted);
  cpp_int q = num / den;  // truncates towards zero
  if (num < 0 && q * den != num) q -= 1;
  return q.convert_to<std::int64_t>();
}

}  // namespace bpmkit
