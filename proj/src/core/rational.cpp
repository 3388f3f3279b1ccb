#include "core/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace chainstore {

namespace {

std::int64_t parse_int(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("Rational::parse: empty integer");
  std::size_t pos = 0;
  const std::string tmp(s);
  const long long v = std::stoll(tmp, &pos);
  if (pos != tmp.size()) throw std::invalid_argument("Rational::parse: trailing characters in '" + tmp + "'");
  return v;
}

std::int64_t pow10_checked(int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > INT64_MAX / 10) throw std::overflow_error("Rational::parse: exponent too large");
    r *= 10;
  }
  return r;
}

}  // namespace

Rational Rational::from_double_exact(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("Rational::from_double_exact: non-finite");
  if (x == static_cast<double>(static_cast<std::int64_t>(x)))
    return Rational(static_cast<std::int64_t>(x));
  // Exact binary expansion: x = m * 2^e with integral m.
  int e = 0;
  double m = std::frexp(x, &e);
  while (m != std::floor(m)) {
    m *= 2.0;
    --e;
    if (e < -70) throw std::overflow_error("Rational::from_double_exact: not representable in 64 bits");
  }
  Rational r(static_cast<std::int64_t>(m));
  Rational two(2);
  for (int i = 0; i < e; ++i) r = r * two;
  for (int i = 0; i < -e; ++i) r = r / two;
  return r;
}

Rational Rational::parse(std::string_view text) {
  // Trim whitespace.
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("Rational::parse: empty string");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }

  // Decimal with optional exponent: [sign]digits[.digits][e[sign]digits]
  int exp10 = 0;
  std::string_view mantissa = text;
  if (const auto epos = text.find_first_of("eE"); epos != std::string_view::npos) {
    exp10 = static_cast<int>(parse_int(text.substr(epos + 1)));
    mantissa = text.substr(0, epos);
  }
  std::string digits;
  int frac_digits = 0;
  bool seen_dot = false;
  for (char c : mantissa) {
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("Rational::parse: multiple dots");
      seen_dot = true;
    } else {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    }
  }
  const std::int64_t m = parse_int(digits);
  const int net = exp10 - frac_digits;
  if (net >= 0) return Rational(m) * Rational(pow10_checked(net));
  return Rational(m, pow10_checked(-net));
}

}  // namespace chainstore
