#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace certify {

using Integer = mpz_class;
using Rational = mpq_class;

// Bit size of an integer: floor(log2|i|) + 1, with tau(0) = 1.
int bitsize(const Integer& v);

// Bit size of a rational p/q in lowest terms: max(tau(p), tau(q)).
int bitsize(const Rational& v);

// Exact conversion of a finite double (dyadic rational).
Rational rational_from_double(double x);

double rational_to_double(const Rational& v);

// Parses "num/den" or "num" with optional sign; rejects zero denominators and
// anything that is not a plain base-10 integer pair. Result is canonicalized.
std::optional<Rational> rational_from_string(const std::string& s);

// Serializes as "num/den", or "num" when the denominator is 1.
std::string rational_to_string(const Rational& v);

inline Rational rational_abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }

// Smallest-denominator rational in the closed interval [lo, hi] (ties on the
// denominator resolved toward the smaller numerator magnitude). Requires lo <= hi.
Rational best_rational_in(const Rational& lo, const Rational& hi);

}  // namespace certify
