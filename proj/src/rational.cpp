#include "fairdiv/rational.hpp"

#include <cctype>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

BigInt parse_integer(std::string_view text) {
  if (text.empty()) throw ParseError("empty number");
  std::size_t start = 0;
  if (text[0] == '-' || text[0] == '+') start = 1;
  if (start == text.size()) throw ParseError("sign without digits: '" + std::string(text) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("invalid integer: '" + std::string(text) + "'");
  }
  return BigInt(std::string(text));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty rational");
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  BigInt num = parse_integer(trim(text.substr(0, slash)));
  BigInt den = parse_integer(trim(text.substr(slash + 1)));
  if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

std::string fraction_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string decimal_hint(const Rational& r, int digits) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  BigInt whole = num / den;
  BigInt rem = num % den;
  std::string frac;
  for (int i = 0; i < digits && rem != 0; ++i) {
    rem *= 10;
    frac += char('0' + static_cast<int>(rem / den));
    rem %= den;
  }
  std::string out = "~" + sign + whole.str();
  if (!frac.empty()) out += "." + frac;
  return out;
}

}  // namespace fairdiv
