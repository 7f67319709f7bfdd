#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>

#include "confplan/error.hpp"

namespace confplan {

using Rational = mpq_class;
using BigInt = mpz_class;

/// num/den in lowest terms (the two-argument mpq_class constructor does not reduce).
inline Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Tolerance used when a floating point value from a document is turned into an exact rational.
inline constexpr double kSnapTolerance = 1e-12;

namespace detail {

// Simplest rational in the closed interval [lo, hi], 0 < lo <= hi.
inline Rational simplest_positive(const Rational& lo, const Rational& hi) {
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  const Rational floor_lo(fl);
  if (floor_lo == lo) return floor_lo;
  if (floor_lo + 1 <= hi) return floor_lo + 1;
  Rational inner = simplest_positive(Rational(1) / (hi - floor_lo), Rational(1) / (lo - floor_lo));
  Rational out = floor_lo + Rational(1) / inner;
  out.canonicalize();
  return out;
}

}  // namespace detail

/// Simplest rational inside [lo, hi] (smallest denominator, then smallest magnitude).
inline Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw Error(Errc::InvalidArgument, "simplest_between: empty interval");
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -detail::simplest_positive(-hi, -lo);
  return detail::simplest_positive(lo, hi);
}

/// Exact rational for a double read from a document: the simplest rational within kSnapTolerance.
inline Rational snap_to_rational(double x, double tolerance = kSnapTolerance) {
  if (!std::isfinite(x)) throw Error(Errc::ParseError, "non-finite number");
  const Rational exact(x);
  const Rational tol(tolerance);
  return simplest_between(exact - tol, exact + tol);
}

/// Parses "p/q", an integer, or a plain decimal ("-0.125", "3e-2") exactly.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return Error(Errc::ParseError, "bad rational literal '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  if (text.find('/') != std::string_view::npos) {
    Rational r;
    if (r.set_str(std::string(text), 10) != 0) throw fail();
    if (r.get_den() == 0) throw fail();
    r.canonicalize();
    return r;
  }
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw fail();
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw fail();
    ++i;
    const std::string rest(text.substr(i));
    if (rest.empty()) throw fail();
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(rest, &used);
    } catch (const std::exception&) {
      throw fail();
    }
    if (used != rest.size()) throw fail();
    exponent += e;
  }
  BigInt mantissa(digits, 10);
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational r = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

/// "p/q", or "p" when the denominator is one. Round-trips through parse_rational.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline Rational abs_value(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace confplan
