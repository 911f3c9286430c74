#pragma once

// Exact arithmetic shared by every module: arbitrary-precision integers and
// rationals, binomials over both, and the fraction-string codec used by the
// file formats.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ksetlab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Precondition violation on a public operation.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed textual input (fraction strings, point-set files).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int sign(const Rational& r) { return (r > 0) - (r < 0); }

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw DomainError("zero denominator");
  return Rational(Integer(num), Integer(den));
}

// Smallest integer >= r.
inline Integer ceil(const Rational& r) {
  const Integer& num = boost::multiprecision::numerator(r);
  const Integer& den = boost::multiprecision::denominator(r);
  Integer q = num / den;  // truncates toward zero
  if (num % den != 0 && num > 0) ++q;
  return q;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// C(n, k) for integers, with C(n, k) = 0 whenever n < k.
inline std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// x(x-1)/2 for rational x, clamped to 0 below x = 2. This extends the
// integer convention C(r, s) = 0 for r < s to the fractional arguments that
// appear in the (<=k)-set bound.
inline Rational binom2(const Rational& x) {
  if (x < 2) return Rational(0);
  return x * (x - 1) / 2;
}

// x(x-1)/2 for rational x with no clamping.
inline Rational binom2_unclamped(const Rational& x) { return x * (x - 1) / 2; }

// Canonical fraction string "p/q" (q >= 1, lowest terms). Integers keep the
// "/1" suffix so every exact cell has the same shape.
inline std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

// Accepts "p/q", "p" and an optional leading sign on p. Rejects zero or
// negative denominators, whitespace and anything else.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s, bool allow_sign) -> Integer {
    if (s.empty()) throw ParseError("empty integer in '" + std::string(text) + "'");
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw ParseError("bad integer in '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') throw ParseError("bad fraction '" + std::string(text) + "'");
    }
    std::string digits(s.substr(i));
    Integer v(digits);
    return (s[0] == '-') ? Integer(-v) : v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, true));
  Integer num = parse_int(text.substr(0, slash), true);
  Integer den = parse_int(text.substr(slash + 1), false);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace ksetlab
