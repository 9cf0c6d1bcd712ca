#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "partbias/error.hpp"

namespace partbias {

using big_int = boost::multiprecision::cpp_int;

/// Exact rational; always kept in lowest terms with a positive denominator.
using rational = boost::multiprecision::cpp_rational;

inline big_int numerator_of(const rational& q) {
  return boost::multiprecision::numerator(q);
}
inline big_int denominator_of(const rational& q) {
  return boost::multiprecision::denominator(q);
}

/// num / den with the sign moved onto the numerator.
inline rational make_rational(const big_int& num, const big_int& den) {
  if (den == 0) fail(errc::degenerate_denominator, "zero denominator");
  if (den < 0) return rational(big_int(-num), big_int(-den));
  return rational(num, den);
}

inline rational reciprocal(const big_int& den) { return make_rational(1, den); }

/// Lossless "p/q" form. Integers are written as "k/1".
inline std::string to_string(const rational& q) {
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

/// Inverse of to_string; also accepts a bare integer.
inline rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return rational(big_int(std::string(text)));
    big_int num(std::string(text.substr(0, slash)));
    big_int den(std::string(text.substr(slash + 1)));
    return make_rational(num, den);
  } catch (const error&) {
    throw;
  } catch (const std::exception&) {
    fail(errc::precondition_violated, "not a rational: " + std::string(text));
  }
}

/// Correctly scaled conversion; cpp_rational's own conversion overflows when
/// numerator and denominator both exceed the double range.
inline double to_double(const rational& q) {
  big_int num = numerator_of(q);
  const big_int den = denominator_of(q);
  if (num == 0) return 0.0;
  const bool negative = num < 0;
  if (negative) num = -num;
  const long shift = 64 - (static_cast<long>(msb(num)) - static_cast<long>(msb(den)));
  big_int scaled;
  if (shift >= 0) scaled = (num << shift) / den;
  else scaled = num / (den << -shift);
  double value = std::ldexp(scaled.convert_to<double>(), static_cast<int>(-shift));
  return negative ? -value : value;
}

inline big_int factorial(std::uint64_t n) {
  big_int out = 1;
  for (std::uint64_t i = 2; i <= n; ++i) out *= i;
  return out;
}

/// (a)_N = a (a-1) ... (a-N+1); (a)_0 = 1.
inline rational falling_product(const rational& a, std::uint64_t count) {
  // Accumulate over a common denominator: (p/q)_N = prod(p - i q) / q^N.
  const big_int p = numerator_of(a);
  const big_int q = denominator_of(a);
  big_int num = 1;
  big_int den = 1;
  for (std::uint64_t i = 0; i < count; ++i) {
    num *= p - q * i;
    den *= q;
  }
  return rational(num, den);
}

}  // namespace partbias
