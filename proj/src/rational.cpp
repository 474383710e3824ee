#include "certify/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace certify {

int bitsize(const Integer& v) {
  if (v == 0) return 1;
  return static_cast<int>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

int bitsize(const Rational& v) {
  return std::max(bitsize(Integer(v.get_num())), bitsize(Integer(v.get_den())));
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite input");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

double rational_to_double(const Rational& v) { return v.get_d(); }

std::optional<Rational> rational_from_string(const std::string& s) {
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::string num = s, den = "1";
  if (auto pos = s.find('/'); pos != std::string::npos) {
    num = s.substr(0, pos);
    den = s.substr(pos + 1);
  }
  if (!is_int(num) || !is_int(den)) return std::nullopt;
  Integer n(num), d(den);
  if (d == 0) return std::nullopt;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& v) {
  Rational c = v;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

// Smallest-denominator rational in [lo, hi] for 0 < lo <= hi, by the classic
// continued-fraction interval walk.
Rational simplest_positive(const Rational& lo, const Rational& hi) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
  if (Rational(fl + 1) <= hi) {
    // An integer lies in the interval: the smallest one >= lo.
    if (Rational(fl) >= lo) return Rational(fl);
    return Rational(fl + 1);
  }
  if (Rational(fl) == lo) return lo;  // lo itself is an integer and hi < fl+1
  Rational lo_frac = lo - Rational(fl);
  Rational hi_frac = hi - Rational(fl);
  // Recurse on reciprocals, flipping the interval.
  Rational inner = simplest_positive(Rational(1) / hi_frac, Rational(1) / lo_frac);
  return Rational(fl) + Rational(1) / inner;
}

}  // namespace

Rational best_rational_in(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("best_rational_in: empty interval");
  if (lo <= 0 && 0 <= hi) return Rational(0);
  if (hi < 0) return -simplest_positive(-hi, -lo);
  return simplest_positive(lo, hi);
}

}  // namespace certify
