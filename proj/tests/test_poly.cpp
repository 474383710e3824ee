#include <cmath>
#include <stdexcept>

#include "certify/poly.hpp"
#include "doctest.h"

using namespace certify;

namespace {

SparsePolynomial make(int n, std::vector<Exponent> exps, std::vector<Rational> coeffs,
                      bool allow_negative = false) {
  SparsePolynomial p;
  p.n = n;
  p.exponents = std::move(exps);
  p.coeffs = std::move(coeffs);
  canonicalize(p, allow_negative);
  return p;
}

SparsePolynomial motzkin() {
  return make(2, {{0, 0}, {2, 4}, {4, 2}, {2, 2}}, {1, 1, 1, -3});
}

}  // namespace

TEST_CASE("lex order on exponents") {
  CHECK(lex_less({0, 0}, {0, 1}));
  CHECK(lex_less({0, 5}, {1, 0}));
  CHECK(lex_less({-2}, {0}));
  CHECK_FALSE(lex_less({1, 2}, {1, 2}));
  CHECK_FALSE(lex_less({1, 0}, {0, 9}));
}

TEST_CASE("canonicalize sorts and validates") {
  SparsePolynomial p;
  p.n = 2;
  p.exponents = {{2, 0}, {0, 0}, {1, 1}};
  p.coeffs = {3, 1, -2};
  canonicalize(p);
  CHECK(p.exponents == std::vector<Exponent>{{0, 0}, {1, 1}, {2, 0}});
  CHECK(p.coeffs[0] == 1);
  CHECK(p.coeffs[1] == -2);
  CHECK(p.coeffs[2] == 3);

  SparsePolynomial dup;
  dup.n = 1;
  dup.exponents = {{1}, {1}};
  dup.coeffs = {1, 1};
  CHECK_THROWS_AS(canonicalize(dup), std::invalid_argument);

  SparsePolynomial zero;
  zero.n = 1;
  zero.exponents = {{1}};
  zero.coeffs = {0};
  CHECK_THROWS_AS(canonicalize(zero), std::invalid_argument);

  SparsePolynomial mis;
  mis.n = 2;
  mis.exponents = {{1}};
  mis.coeffs = {1};
  CHECK_THROWS_AS(canonicalize(mis), std::invalid_argument);

  SparsePolynomial neg;
  neg.n = 1;
  neg.exponents = {{-1}};
  neg.coeffs = {1};
  CHECK_THROWS_AS(canonicalize(neg), std::invalid_argument);
  canonicalize(neg, true);  // fine as a signomial
  CHECK(neg.term_count() == 1);
}

TEST_CASE("support partition splits squares from the rest") {
  SparsePolynomial p = motzkin();
  SupportPartition part = partition_support(p);
  CHECK(part.mosq == std::vector<int>{0, 2, 3});  // (0,0), (2,4), (4,2)
  CHECK(part.nosq == std::vector<int>{1});        // (2,2) with coefficient -3
  CHECK(part.has_constant);
  CHECK(part.constant_index == 0);

  // odd exponents are never squares, even exponents with negative
  // coefficient are not either
  SparsePolynomial q = make(1, {{0}, {1}, {2}, {4}}, {1, 1, -1, 2});
  SupportPartition qp = partition_support(q);
  CHECK(qp.mosq == std::vector<int>{0, 3});
  CHECK(qp.nosq == std::vector<int>{1, 2});
}

TEST_CASE("degree and coefficient bitsize") {
  SparsePolynomial p = motzkin();
  CHECK(degree(p) == 6);
  CHECK(bitsize(p) == 2);  // the -3
  SparsePolynomial s = make(2, {{-3, 1}, {2, 2}}, {Rational(1, 1024), 5}, true);
  CHECK(degree(s) == 4);
  CHECK(bitsize(s) == 11);
}

TEST_CASE("exact evaluation") {
  SparsePolynomial p = make(1, {{0}, {1}, {2}}, {1, -1, 1});
  CHECK(evaluate(p, {Rational(1, 2)}) == Rational(3, 4));
  CHECK(evaluate(p, {Rational(-2)}) == Rational(7));
  CHECK(evaluate_double(p, {0.5}) == doctest::Approx(0.75));

  SparsePolynomial m = motzkin();
  CHECK(evaluate(m, {Rational(1), Rational(1)}) == 0);
  // 1 + 16/9 + 4/81 - 4/3
  CHECK(evaluate(m, {Rational(1, 3), Rational(2)}) == Rational(121, 81));

  SparsePolynomial s = make(1, {{-2}}, {1}, true);
  CHECK(evaluate(s, {Rational(1, 2)}) == 4);
  CHECK_THROWS_AS(evaluate(s, {Rational(0)}), std::domain_error);
}

TEST_CASE("signomial value matches the exponential reading") {
  SparsePolynomial f = make(1, {{-2}, {0}, {2}}, {1, 3, 1}, true);
  // f(x) = e^{2x} + e^{-2x} + 3 at x = 0
  CHECK(signomial_value(f, {0.0}) == doctest::Approx(5.0));
  double x = 0.37;
  CHECK(signomial_value(f, {x}) ==
        doctest::Approx(std::exp(2 * x) + std::exp(-2 * x) + 3));
}

TEST_CASE("hyperbolic substitution expands exactly") {
  // y^2 with y = e^x - e^{-x} gives e^{2x} - 2 + e^{-2x}
  SparsePolynomial g = make(1, {{2}}, {1});
  SparsePolynomial f = expand_signomial(g);
  CHECK(f.exponents == std::vector<Exponent>{{-2}, {0}, {2}});
  CHECK(f.coeffs == std::vector<Rational>{1, -2, 1});

  // y^2 + 2: the constants cancel
  SparsePolynomial g2 = make(1, {{0}, {2}}, {2, 1});
  SparsePolynomial f2 = expand_signomial(g2);
  CHECK(f2.exponents == std::vector<Exponent>{{-2}, {2}});
  CHECK(f2.coeffs == std::vector<Rational>{1, 1});

  // y^3 = e^{3x} - 3 e^{x} + 3 e^{-x} - e^{-3x}
  SparsePolynomial g3 = make(1, {{3}}, {1});
  SparsePolynomial f3 = expand_signomial(g3);
  CHECK(f3.exponents == std::vector<Exponent>{{-3}, {-1}, {1}, {3}});
  CHECK(f3.coeffs == std::vector<Rational>{-1, 3, -3, 1});

  // mixed variables: y1 y2 spreads over the four sign patterns
  SparsePolynomial g4 = make(2, {{1, 1}}, {1});
  SparsePolynomial f4 = expand_signomial(g4);
  CHECK(f4.exponents ==
        std::vector<Exponent>{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}});
  CHECK(f4.coeffs == std::vector<Rational>{1, -1, -1, 1});

  // numeric spot check on a denser input
  SparsePolynomial g5 = make(2, {{0, 0}, {2, 0}, {1, 2}, {0, 3}}, {5, 2, -7, 3});
  SparsePolynomial f5 = expand_signomial(g5);
  for (double x1 : {-0.4, 0.3}) {
    for (double x2 : {0.2, 0.9}) {
      double y1 = std::exp(x1) - std::exp(-x1);
      double y2 = std::exp(x2) - std::exp(-x2);
      double direct = evaluate_double(g5, {y1, y2});
      CHECK(signomial_value(f5, {x1, x2}) == doctest::Approx(direct).epsilon(1e-10));
    }
  }
}

TEST_CASE("instance JSON round trip") {
  SparsePolynomial p = make(2, {{0, 0}, {1, 2}, {-2, 4}}, {Rational(22, 7), -3, 1}, true);
  SparsePolynomial q = parse_instance(serialize_instance(p));
  CHECK(q.n == p.n);
  CHECK(q.exponents == p.exponents);
  CHECK(q.coeffs == p.coeffs);
}

TEST_CASE("instance JSON rejects malformed input") {
  CHECK_THROWS_AS(parse_instance("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance("[]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance(R"({"terms": []})"), std::invalid_argument);
  // float coefficients are not exact, so they are rejected outright
  CHECK_THROWS_AS(
      parse_instance(R"({"n": 1, "terms": [{"exponent": [2], "coeff": 0.5}]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse_instance(R"({"n": 1, "terms": [{"exponent": [2], "coeff": "1/0"}]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse_instance(R"({"n": 2, "terms": [{"exponent": [2], "coeff": "1"}]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse_instance(
          R"({"n": 1, "terms": [{"exponent": [2], "coeff": "1"}, {"exponent": [2], "coeff": "2"}]})"),
      std::invalid_argument);
  // negative exponents only pass in signomial mode
  std::string neg = R"({"n": 1, "terms": [{"exponent": [-2], "coeff": "1"}]})";
  CHECK_THROWS_AS(parse_instance(neg, false), std::invalid_argument);
  CHECK(parse_instance(neg, true).term_count() == 1);
}

TEST_CASE("rational string forms") {
  CHECK(rational_to_string(Rational(3, 4)) == "3/4");
  CHECK(rational_to_string(Rational(-7)) == "-7");
  CHECK(*rational_from_string("22/7") == Rational(22, 7));
  CHECK(*rational_from_string("-5") == Rational(-5));
  CHECK(*rational_from_string("4/6") == Rational(2, 3));
  CHECK_FALSE(rational_from_string("1/0").has_value());
  CHECK_FALSE(rational_from_string("a/b").has_value());
  CHECK_FALSE(rational_from_string("1.5").has_value());
  CHECK_FALSE(rational_from_string("").has_value());
}
