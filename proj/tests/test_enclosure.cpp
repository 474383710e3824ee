#include <cmath>
#include <stdexcept>

#include "certify/enclosure.hpp"
#include "doctest.h"

using namespace certify;

TEST_CASE("bit sizes") {
  CHECK(bitsize(Integer(0)) == 1);
  CHECK(bitsize(Integer(1)) == 1);
  CHECK(bitsize(Integer(5)) == 3);
  CHECK(bitsize(Integer(8)) == 4);
  CHECK(bitsize(Integer(-8)) == 4);
  CHECK(bitsize(Rational(3, 7)) == 3);
  CHECK(bitsize(Rational(0)) == 1);
  CHECK(bitsize(Rational(1, 1024)) == 11);
  CHECK(bitsize(Rational(-255, 256)) == 9);
}

TEST_CASE("simplest rational in an interval") {
  CHECK(best_rational_in(Rational(1, 3), Rational(1, 2)) == Rational(1, 2));
  CHECK(best_rational_in(Rational(2, 7), Rational(3, 7)) == Rational(1, 3));
  CHECK(best_rational_in(Rational(-1, 2), Rational(1, 2)) == 0);
  CHECK(best_rational_in(Rational(3), Rational(3)) == 3);
  CHECK(best_rational_in(Rational(5, 2), Rational(7, 2)) == 3);
  CHECK(best_rational_in(Rational(-7, 2), Rational(-5, 2)) == -3);
}

TEST_CASE("log and exp enclosures bracket the value") {
  // moderate precision so the nearest-double reference sits strictly inside
  Enclosure l2 = enclose_log(Rational(2), 40);
  CHECK(l2.contains(rational_from_double(std::log(2.0))));
  CHECK(l2.width() < Rational(1, 1000000));

  Enclosure l1 = enclose_log(Rational(1), 40);
  CHECK(l1.contains(Rational(0)));

  Enclosure lp = enclose_log(Rational(1024), 40);
  CHECK(rational_to_double(lp.lower) == doctest::Approx(10 * std::log(2.0)).epsilon(1e-9));

  Enclosure e1 = enclose_exp(Rational(1), 40);
  CHECK(e1.contains(rational_from_double(std::exp(1.0))));
  Enclosure e0 = enclose_exp(Rational(0), 40);
  CHECK(e0.contains(Rational(1)));
  Enclosure em = enclose_exp(Rational(-3, 2), 40);
  CHECK(em.contains(rational_from_double(std::exp(-1.5))));

  CHECK_THROWS_AS(enclose_log(Rational(0), 40), std::invalid_argument);
  CHECK_THROWS_AS(enclose_log(Rational(-1), 40), std::invalid_argument);
}

TEST_CASE("enclosures nest as precision grows") {
  for (const Rational& x : {Rational(3), Rational(22, 7), Rational(1, 97)}) {
    Enclosure coarse = enclose_log(x, 32);
    Enclosure fine = enclose_log(x, 128);
    CHECK(coarse.lower <= fine.lower);
    CHECK(fine.upper <= coarse.upper);
    CHECK(fine.width() < coarse.width());
    CHECK(fine.lower <= fine.upper);
  }
  Enclosure ec = enclose_exp(Rational(5, 3), 32);
  Enclosure ef = enclose_exp(Rational(5, 3), 128);
  CHECK(ec.lower <= ef.lower);
  CHECK(ef.upper <= ec.upper);
}

TEST_CASE("entropy enclosure with an exact value") {
  // nu = c = (1, 1): each term contributes log 1 - 1 - log 1 = -1
  RationalVector nu = {1, 1}, c = {1, 1};
  Enclosure e = entropy_enclosure(nu, c, 64);
  CHECK(e.contains(Rational(-2)));
  CHECK(e.width() < Rational(1, 1000000));

  // zero entries of nu contribute nothing, even against c = 0
  RationalVector nu2 = {1, 0}, c2 = {1, 0};
  Enclosure e2 = entropy_enclosure(nu2, c2, 64);
  CHECK(e2.contains(Rational(-1)));

  RationalVector nu3 = {2}, c3 = {1};
  Enclosure e3 = entropy_enclosure(nu3, c3, 64);
  CHECK(rational_to_double(e3.lower) ==
        doctest::Approx(2 * (std::log(2.0) - 1)).epsilon(1e-9));
}

TEST_CASE("entropy comparison with ties") {
  RationalVector nu = {1, 1}, c = {1, 1};
  CHECK(check_entropy_leq(nu, c, Rational(-2)) == CheckOutcome::Holds);
  CHECK(check_entropy_leq(nu, c, Rational(-2) + Rational(1, 1000000000)) ==
        CheckOutcome::Holds);
  CHECK(check_entropy_leq(nu, c, Rational(-2) - Rational(1, 1000000000)) ==
        CheckOutcome::Fails);

  // genuine log: 2(log 2 - 1) = -0.61370563...
  RationalVector nu2 = {2}, c2 = {1};
  CHECK(check_entropy_leq(nu2, c2, Rational(-6137, 10000)) == CheckOutcome::Holds);
  CHECK(check_entropy_leq(nu2, c2, Rational(-307, 500)) == CheckOutcome::Fails);
}

TEST_CASE("circuit power comparison") {
  RationalVector xs = {1, 1, 1};
  RationalVector w = {Rational(1, 3), Rational(1, 3), Rational(1, 3)};
  // the balanced circuit: theta = 3 exactly
  CHECK(check_circuit_power_leq(Rational(3), xs, w) == CheckOutcome::Holds);
  CHECK(check_circuit_power_leq(Rational(3) + Rational(1, 1000000), xs, w) ==
        CheckOutcome::Fails);
  CHECK(check_circuit_power_leq(Rational(2), xs, w) == CheckOutcome::Holds);

  // theta = sqrt(8) = 2.8284271...
  RationalVector xs2 = {2, 1};
  RationalVector w2 = {Rational(1, 2), Rational(1, 2)};
  CHECK(check_circuit_power_leq(Rational(707, 250), xs2, w2) == CheckOutcome::Holds);
  CHECK(check_circuit_power_leq(Rational(2829, 1000), xs2, w2) == CheckOutcome::Fails);
}

TEST_CASE("band rounding recovers clean rationals") {
  Rational delta(1, 8388608);  // 2^-23
  Rational noisy = rational_from_double(0.3333333432674408);  // float(1/3)
  CHECK(round_rational(noisy, delta) == Rational(1, 3));
  CHECK(round_rational(Rational(0), delta) == 0);
  CHECK(round_rational(Rational(5), delta) == 5);
  // the band scales with the magnitude
  Rational big = Rational(1000000) + Rational(1, 100);
  CHECK(round_rational(big, delta) == 1000000);
}

TEST_CASE("directed rounding keeps the safe side") {
  Rational delta(1, 8388608);
  Rational x(1, 3);
  Rational up = round_up(x, delta);
  CHECK(up >= x);
  CHECK(up <= x * (Rational(1) + delta));
  CHECK_THROWS_AS(round_up(Rational(0), delta), std::invalid_argument);

  Rational down = round_down(Rational(7, 3), delta);
  CHECK(down <= Rational(7, 3));
  CHECK(down >= Rational(7, 3) - delta * 3);
  CHECK(round_down(Rational(0), delta) == 0);
  CHECK(round_down(Rational(3), delta) == 3);
}

TEST_CASE("exp of an affine log form rounds up soundly") {
  Rational delta(1, 8388608);
  // exp(0) = 1 is exact; exp(log 2) stays on the safe side of 2
  CHECK(round_up_exp_affine({}, Rational(0), delta) == 1);
  Rational two = round_up_exp_affine({{Rational(1), Rational(2)}}, Rational(0), delta);
  CHECK(two > 2);
  CHECK(two <= Rational(2) * (Rational(1) + delta));

  // sqrt(2): soundness certified by squaring
  Rational r = round_up_exp_affine({{Rational(1, 2), Rational(2)}}, Rational(0), delta);
  CHECK(r * r >= 2);
  CHECK(rational_to_double(r) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));

  // negative weight: exp(-log 3) = 1/3
  Rational t = round_up_exp_affine({{Rational(-1), Rational(3)}}, Rational(0), delta);
  CHECK(t >= Rational(1, 3));
  CHECK(t < Rational(16667, 50000));

  // e * 2^{-1} * 5^{1/2}, mixed weights: value = e * sqrt(5) / 2 = 3.0391...
  Rational m = round_up_exp_affine(
      {{Rational(-1), Rational(2)}, {Rational(1, 2), Rational(5)}}, Rational(1), delta);
  double ref = std::exp(1.0) * std::sqrt(5.0) / 2.0;
  CHECK(rational_to_double(m) >= ref - 1e-9);
  CHECK(rational_to_double(m) <= ref * (1 + 1e-6));

  CHECK_THROWS_AS(round_up_exp_affine({{Rational(1), Rational(0)}}, Rational(0), delta),
                  std::invalid_argument);
}

TEST_CASE("exact rational powers") {
  CHECK(rational_pow_ui(Rational(2, 3), 5) == Rational(32, 243));
  CHECK(rational_pow_ui(Rational(-1, 2), 2) == Rational(1, 4));
  CHECK(rational_pow_ui(Rational(7), 0) == 1);
}
