// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace dlopt {

// All arithmetic in the library is exact. Floating point is never used;
// equivalence verdicts must not depend on rounding.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline std::string rational_to_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Rationals are kept in canonical form (coprime, positive denominator), so
// value equality is component equality. The library's own == and < fall back
// to a division-based comparison algorithm; these helpers avoid it.
inline bool rational_equal(const Rational& a, const Rational& b) {
  return numerator(a) == numerator(b) && denominator(a) == denominator(b);
}

// Value comparison by cross-multiplication. Denominators are positive in the
// canonical form, so the order of the products matches the order of the
// values. Substantially cheaper than the library operator<, which runs a
// division-based continued-fraction comparison.
inline int compare_values(const Rational& a, const Rational& b) {
  Integer lhs = numerator(a) * denominator(b);
  Integer rhs = numerator(b) * denominator(a);
  return lhs.compare(rhs);
}

// A strict weak order on the canonical representation, for containers. It is
// consistent with equality but is not the value order.
inline bool representation_less(const Rational& a, const Rational& b) {
  int c = numerator(a).compare(numerator(b));
  if (c != 0) return c < 0;
  return denominator(a).compare(denominator(b)) < 0;
}

}  // namespace dlopt
