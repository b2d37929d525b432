#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace fairdiv {

// All arithmetic in this library is exact. Utilities, welfare values and
// prices are rationals over arbitrary-precision integers; nothing is ever
// rounded except for the human-readable decimal hints in table output.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parse "p" or "p/q" (q > 0 after sign normalization). Throws ParseError.
Rational parse_rational(std::string_view text);

/// Lowest-terms text form: "p" when the denominator is 1, else "p/q".
std::string fraction_string(const Rational& r);

/// Decimal approximation for display only ("~0.923077"). Truncated toward
/// zero after `digits` places, computed with integer arithmetic.
std::string decimal_hint(const Rational& r, int digits = 6);

inline Rational make_rational(long long num, long long den = 1) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(BigInt(num), BigInt(den));
}

}  // namespace fairdiv
