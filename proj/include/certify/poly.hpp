#pragma once

#include <string>
#include <vector>

#include "certify/rational.hpp"

namespace certify {

using Exponent = std::vector<int>;

// Sparse multivariate polynomial (or signomial, when negative exponents are
// allowed): sum_j coeffs[j] * x^exponents[j]. Terms are kept in lexicographic
// exponent order with pairwise distinct exponents and nonzero coefficients.
struct SparsePolynomial {
  int n = 0;
  std::vector<Exponent> exponents;
  std::vector<Rational> coeffs;

  int term_count() const { return static_cast<int>(exponents.size()); }
};

bool lex_less(const Exponent& a, const Exponent& b);

// Sorts terms into canonical order and enforces the type invariants; throws
// std::invalid_argument on duplicate exponents, zero coefficients, length
// mismatches, or (unless allow_negative) negative exponents.
void canonicalize(SparsePolynomial& p, bool allow_negative = false);

struct SupportPartition {
  std::vector<int> mosq;  // monomial squares: all-even exponent, positive coefficient
  std::vector<int> nosq;  // non-squares: everything else
  bool has_constant = false;
  int constant_index = -1;
};

SupportPartition partition_support(const SparsePolynomial& p);

// Largest exponent 1-norm over the support.
long degree(const SparsePolynomial& p);

// Max coefficient bit size.
int bitsize(const SparsePolynomial& p);

// Exact evaluation at a rational point. A negative exponent with a zero
// coordinate raises std::domain_error.
Rational evaluate(const SparsePolynomial& p, const std::vector<Rational>& x);
double evaluate_double(const SparsePolynomial& p, const std::vector<double>& x);

// Value of sum_j b_j exp(a(j) . x), reading the terms as a signomial.
double signomial_value(const SparsePolynomial& f, const std::vector<double>& x);

// Substitutes y_i = exp(x_i) - exp(-x_i) into the polynomial g(y) and expands
// into a signomial over Z^n. Exact binomial coefficients; canonical order;
// cancelled terms dropped. Requires nonnegative exponents in g.
SparsePolynomial expand_signomial(const SparsePolynomial& g);

// Instance JSON schema:
//   {"n": <int>, "terms": [{"exponent": [<int>...], "coeff": "<num>/<den>"}, ...]}
// Coefficients must be strings (or JSON integers); floats are rejected.
// Errors identify the offending term.
SparsePolynomial parse_instance(const std::string& json_text, bool allow_negative = true);
std::string serialize_instance(const SparsePolynomial& p);

}  // namespace certify
