#pragma once

#include <gmpxx.h>

#include <string>

#include "lieshear/error.hpp"

namespace lieshear {

/// Exact rational number, always kept in lowest terms with positive
/// denominator (GMP canonicalizes after every arithmetic operation).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses "p", "-p" or "p/q" exactly.
inline Rational rational_from_string(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0) {
    throw ParseError("not a rational number: '" + text + "'", 0);
  }
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace lieshear
