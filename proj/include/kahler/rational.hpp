#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kahler {

using Rational = mpq_class;

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Accepts "p", "-p", "p/q"; throws Error(parse_error) otherwise.
Rational parse_rational(std::string_view text);

Rational factorial(int n);

/// p/q in canonical form. mpq_class(p, q) alone does not reduce.
inline Rational fraction(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Exact square root if both numerator and denominator are perfect squares.
bool exact_sqrt(const Rational& q, Rational& root);

}  // namespace kahler
