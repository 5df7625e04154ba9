#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bpmkit {

/// Exact arbitrary-precision rational used for probabilities and expected times.
using Rational = boost::multiprecision::cpp_rational;

/// Parses a plain decimal literal such as "0.05", "1", ".5" exactly.
/// Throws std::invalid_argument on anything else.
Rational parse_decimal(std::string_view text);

/// "3/4", or "5" for integral values.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Nearest integer, halves rounded towards positive infinity.
std::int64_t round_half_up(const Rational& r);

}  // namespace bpmkit
