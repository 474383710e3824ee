#include "certify/enclosure.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace certify {

namespace {

constexpr int kLadderStart = 64;
constexpr int kCheckPrecisionCap = 4096;
constexpr int kRoundPrecisionCap = 8192;
constexpr long kExactBitBudget = 400000;

Rational mpfr_to_rational(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return Rational(0);
  if (!mpfr_number_p(x)) throw std::overflow_error("mpfr value not finite");
  mpz_class mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
  Rational q(mant);
  if (e >= 0)
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
  else
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
  return q;
}

struct MpfrValue {
  mpfr_t v;
  explicit MpfrValue(int bits) { mpfr_init2(v, bits); }
  ~MpfrValue() { mpfr_clear(v); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
};

Rational directed_log(const Rational& x, int bits, mpfr_rnd_t rnd) {
  MpfrValue t(bits), r(bits);
  mpfr_set_q(t.v, x.get_mpq_t(), rnd);
  mpfr_log(r.v, t.v, rnd);
  return mpfr_to_rational(r.v);
}

Rational directed_exp(const Rational& x, int bits, mpfr_rnd_t rnd) {
  MpfrValue t(bits), r(bits);
  mpfr_set_q(t.v, x.get_mpq_t(), rnd);
  mpfr_exp(r.v, t.v, rnd);
  return mpfr_to_rational(r.v);
}

// scaled weight w*scale as a machine integer, if it is one
bool integer_exponent(const Rational& w, const Integer& scale, unsigned long* out) {
  Integer e = w.get_num() * scale;
  if (!mpz_divisible_p(e.get_mpz_t(), w.get_den().get_mpz_t())) return false;
  e /= w.get_den();
  if (e < 0 || !e.fits_ulong_p()) return false;
  *out = e.get_ui();
  return true;
}

}  // namespace

Enclosure enclose_log(const Rational& x, int bits) {
  if (x <= 0) throw std::invalid_argument("enclose_log: argument must be positive");
  return Enclosure{directed_log(x, bits, MPFR_RNDD), directed_log(x, bits, MPFR_RNDU),
                   bits};
}

Enclosure enclose_exp(const Rational& x, int bits) {
  return Enclosure{directed_exp(x, bits, MPFR_RNDD), directed_exp(x, bits, MPFR_RNDU),
                   bits};
}

Enclosure entropy_enclosure(const RationalVector& nu, const RationalVector& c, int bits) {
  if (nu.size() != c.size())
    throw std::invalid_argument("entropy_enclosure: size mismatch");
  Enclosure acc{Rational(0), Rational(0), bits};
  for (size_t i = 0; i < nu.size(); ++i) {
    if (nu[i] == 0) continue;  // nu log nu -> 0 in the limit
    if (nu[i] < 0) throw std::invalid_argument("entropy_enclosure: negative mass");
    if (c[i] <= 0) throw std::invalid_argument("entropy_enclosure: nonpositive reference");
    Enclosure ln = enclose_log(nu[i], bits);
    Enclosure lc = enclose_log(c[i], bits);
    acc.lower += nu[i] * (ln.lower - 1 - lc.upper);
    acc.upper += nu[i] * (ln.upper - 1 - lc.lower);
  }
  return acc;
}

CheckOutcome check_entropy_leq(const RationalVector& nu, const RationalVector& c,
                               const Rational& bound) {
  for (int bits = kLadderStart; bits <= kCheckPrecisionCap; bits *= 2) {
    Enclosure e = entropy_enclosure(nu, c, bits);
    if (e.upper <= bound) return CheckOutcome::Holds;
    if (e.lower > bound) return CheckOutcome::Fails;
  }
  // Tight case: the only way the value can equal a rational bound is for the
  // log part to vanish as a rational identity, which is decidable exactly.
  Integer scale(1);
  for (size_t i = 0; i < nu.size(); ++i)
    if (nu[i] != 0)
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), nu[i].get_den().get_mpz_t());
  Rational product(1), mass(0);
  long bit_budget = 0;
  for (size_t i = 0; i < nu.size(); ++i) {
    if (nu[i] == 0) continue;
    unsigned long e = 0;
    if (!integer_exponent(nu[i], scale, &e)) return CheckOutcome::Inconclusive;
    Rational base = nu[i] / c[i];
    bit_budget += static_cast<long>(e) * bitsize(base);
    if (bit_budget > kExactBitBudget) return CheckOutcome::Inconclusive;
    product *= rational_pow_ui(base, e);
    mass += nu[i];
  }
  if (product != 1) return CheckOutcome::Inconclusive;
  return -mass <= bound ? CheckOutcome::Holds : CheckOutcome::Fails;
}

CheckOutcome check_circuit_power_leq(const Rational& b_abs, const RationalVector& xs,
                                     const RationalVector& weights) {
  if (xs.size() != weights.size())
    throw std::invalid_argument("check_circuit_power_leq: size mismatch");
  if (b_abs < 0)
    throw std::invalid_argument("check_circuit_power_leq: magnitude is negative");
  for (size_t i = 0; i < xs.size(); ++i)
    if (xs[i] <= 0 || weights[i] <= 0)
      throw std::invalid_argument("check_circuit_power_leq: nonpositive entry");
  if (b_abs == 0) return CheckOutcome::Holds;

  for (int bits = kLadderStart; bits <= kCheckPrecisionCap; bits *= 2) {
    Enclosure lb = enclose_log(b_abs, bits);
    Rational rhs_lo(0), rhs_hi(0);
    for (size_t i = 0; i < xs.size(); ++i) {
      Enclosure lx = enclose_log(xs[i], bits);
      Enclosure lw = enclose_log(weights[i], bits);
      rhs_lo += weights[i] * (lx.lower - lw.upper);
      rhs_hi += weights[i] * (lx.upper - lw.lower);
    }
    if (lb.upper <= rhs_lo) return CheckOutcome::Holds;
    if (lb.lower > rhs_hi) return CheckOutcome::Fails;
  }

  // exact route: compare b^D * prod w^(w D) <= prod x^(w D) in integers
  Integer scale(1);
  for (const Rational& w : weights)
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), w.get_den().get_mpz_t());
  if (!scale.fits_ulong_p()) return CheckOutcome::Inconclusive;
  unsigned long d = scale.get_ui();
  long bit_budget = static_cast<long>(d) * bitsize(b_abs);
  Rational lhs = rational_pow_ui(b_abs, d), rhs(1);
  for (size_t i = 0; i < xs.size(); ++i) {
    unsigned long e = 0;
    if (!integer_exponent(weights[i], scale, &e)) return CheckOutcome::Inconclusive;
    bit_budget += static_cast<long>(e) * (bitsize(xs[i]) + bitsize(weights[i]));
    if (bit_budget > kExactBitBudget) return CheckOutcome::Inconclusive;
    lhs *= rational_pow_ui(weights[i], e);
    rhs *= rational_pow_ui(xs[i], e);
  }
  return lhs <= rhs ? CheckOutcome::Holds : CheckOutcome::Fails;
}

Rational round_up(const Rational& x, const Rational& delta) {
  if (x <= 0) throw std::invalid_argument("round_up: argument must be positive");
  return best_rational_in(x, x + x * delta);
}

Rational round_down(const Rational& x, const Rational& delta) {
  Rational mag = rational_abs(x);
  if (mag < 1) mag = 1;
  return best_rational_in(x - delta * mag, x);
}

Rational round_up_exp_affine(const std::vector<std::pair<Rational, Rational>>& log_terms,
                             const Rational& constant, const Rational& delta) {
  if (delta <= 0) throw std::invalid_argument("round_up_exp_affine: delta must be positive");
  for (const auto& [w, v] : log_terms)
    if (v <= 0)
      throw std::invalid_argument("round_up_exp_affine: log of nonpositive value");
  for (int bits = kLadderStart; bits <= kRoundPrecisionCap; bits *= 2) {
    Rational lo = constant, hi = constant;
    for (const auto& [w, v] : log_terms) {
      if (w == 0) continue;
      Enclosure lv = enclose_log(v, bits);
      if (w > 0) {
        lo += w * lv.lower;
        hi += w * lv.upper;
      } else {
        lo += w * lv.upper;
        hi += w * lv.lower;
      }
    }
    Rational elo = directed_exp(lo, bits, MPFR_RNDD);
    Rational ehi = directed_exp(hi, bits, MPFR_RNDU);
    if (elo <= 0) continue;
    Rational cap = elo + elo * delta;
    if (ehi > cap) continue;
    // prefer the simplest value of the whole window when it provably
    // dominates the enclosure; otherwise stay strictly above it
    Rational cand = best_rational_in(elo, cap);
    return cand >= ehi ? cand : best_rational_in(ehi, cap);
  }
  throw std::runtime_error("round_up_exp_affine: enclosure failed to converge");
}

Rational round_rational(const Rational& x, const Rational& delta) {
  Rational mag = rational_abs(x);
  if (mag < 1) mag = 1;
  Rational h = delta * mag;
  return best_rational_in(x - h, x + h);
}

Rational rational_pow_ui(const Rational& x, unsigned long e) {
  Rational r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(x.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(x.get_mpq_t()), e);
  return r;  // already canonical: powers of coprime numbers stay coprime
}

}  // namespace certify
