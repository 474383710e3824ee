#pragma once

#include <utility>
#include <vector>

#include "certify/rational.hpp"

namespace certify {

using RationalVector = std::vector<Rational>;

// Closed rational interval guaranteed to contain the targeted real value.
struct Enclosure {
  Rational lower, upper;
  int precision_bits = 0;

  bool contains(const Rational& q) const { return lower <= q && q <= upper; }
  Rational width() const { return upper - lower; }
};

// Directed-rounding enclosures; x is converted and transformed with the
// rounding mode pushed outward on both ends.
Enclosure enclose_log(const Rational& x, int bits);  // requires x > 0
Enclosure enclose_exp(const Rational& x, int bits);

// Enclosure of sum_i nu_i (log nu_i - 1 - log c_i), the relative entropy of
// nu against e*c. Zero entries of nu contribute zero; requires nu >= 0 and
// c > 0 wherever nu > 0.
Enclosure entropy_enclosure(const RationalVector& nu, const RationalVector& c, int bits);

enum class CheckOutcome { Holds, Fails, Inconclusive };

// Decides sum_i nu_i (log nu_i - 1 - log c_i) <= bound with adaptive
// precision; exact tie-breaking kicks in when the inequality is tight and the
// log part collapses to a rational identity.
CheckOutcome check_entropy_leq(const RationalVector& nu, const RationalVector& c,
                               const Rational& bound);

// Decides b_abs <= prod_i (x_i / w_i)^(w_i) for positive x, positive weights
// w summing to one. Adaptive interval route first, exact integer-power route
// for ties with moderate common denominator.
CheckOutcome check_circuit_power_leq(const Rational& b_abs, const RationalVector& xs,
                                     const RationalVector& weights);

// Smallest-denominator rational in [x, x*(1+delta)]; requires x > 0.
Rational round_up(const Rational& x, const Rational& delta);

// Smallest-denominator rational in [x - delta*max(1,|x|), x].
Rational round_down(const Rational& x, const Rational& delta);

// Smallest-denominator rational r with
//   exp(constant + sum_i w_i log v_i) <= r <= (1+delta) * exp(...).
// Each v_i must be positive.
Rational round_up_exp_affine(const std::vector<std::pair<Rational, Rational>>& log_terms,
                             const Rational& constant, const Rational& delta);

// Smallest-denominator rational within delta * max(1, |x|) of x.
Rational round_rational(const Rational& x, const Rational& delta);

// x^e for a machine-size exponent, exact.
Rational rational_pow_ui(const Rational& x, unsigned long e);

}  // namespace certify
