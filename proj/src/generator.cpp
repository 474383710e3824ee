#include "certify/generator.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>

namespace certify {

namespace {

// modulo reduction keeps the stream portable across standard libraries
long rand_range(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

using TermMap = std::map<Exponent, Rational>;

void add_term(TermMap& terms, Exponent e, Rational c) { terms.emplace(std::move(e), std::move(c)); }

SparsePolynomial from_terms(int n, const TermMap& terms, bool laurent) {
  SparsePolynomial p;
  p.n = n;
  for (const auto& [e, c] : terms) {
    p.exponents.push_back(e);
    p.coeffs.push_back(c);
  }
  canonicalize(p, laurent);
  return p;
}

SparsePolynomial generate_polynomial(const GeneratorParams& params,
                                     std::mt19937_64& rng) {
  const int n = params.n;
  const int d = std::max(2, params.degree - params.degree % 2);
  TermMap terms;
  add_term(terms, Exponent(n, 0), Rational(rand_range(rng, 2, 20)));
  for (int i = 0; i < n; ++i) {
    Exponent e(n, 0);
    e[i] = d;
    add_term(terms, std::move(e), Rational(rand_range(rng, 1, 20)));
  }
  int remaining = std::max(1, params.terms - 1 - n);
  int inner = std::max(1, 2 * remaining / 3);
  int extra = remaining - inner;

  for (int k = 0; k < extra; ++k) {
    for (int tries = 0; tries < 64; ++tries) {
      Exponent e(n);
      long total = 0;
      for (int i = 0; i < n; ++i) {
        e[i] = 2 * static_cast<int>(rand_range(rng, 0, d / 2));
        total += e[i];
      }
      if (total == 0 || total > d) continue;
      if (terms.count(e)) continue;
      add_term(terms, std::move(e), Rational(rand_range(rng, 1, 20)));
      break;
    }
  }
  for (int k = 0; k < inner; ++k) {
    for (int tries = 0; tries < 64; ++tries) {
      Exponent e(n);
      long total = 0;
      for (int i = 0; i < n; ++i) {
        e[i] = static_cast<int>(rand_range(rng, 0, d - 1));
        total += e[i];
      }
      if (total == 0 || total > d - 1) continue;
      if (terms.count(e)) continue;
      add_term(terms, std::move(e), Rational(-rand_range(rng, 1, 9)));
      break;
    }
  }
  return from_terms(n, terms, false);
}

SparsePolynomial generate_signomial(const GeneratorParams& params,
                                    std::mt19937_64& rng) {
  const int n = params.n;
  const int m = std::max(2, params.degree);
  TermMap terms;
  add_term(terms, Exponent(n, 0), Rational(rand_range(rng, 5, 30)));
  for (int i = 0; i < n; ++i)
    for (int sgn : {1, -1}) {
      Exponent e(n, 0);
      e[i] = sgn * m;
      add_term(terms, std::move(e), Rational(rand_range(rng, 5, 30)));
    }
  int remaining = std::max(1, params.terms - 1 - 2 * n);
  int negatives = std::max(1, (remaining + 1) / 2);
  int positives = remaining - negatives;

  auto sample_inside = [&](int radius) -> std::optional<Exponent> {
    for (int tries = 0; tries < 64; ++tries) {
      Exponent e(n);
      long total = 0;
      for (int i = 0; i < n; ++i) {
        e[i] = static_cast<int>(rand_range(rng, -radius, radius));
        total += std::abs(e[i]);
      }
      if (total == 0 || total > radius) continue;
      if (terms.count(e)) continue;
      return e;
    }
    return std::nullopt;
  };
  for (int k = 0; k < negatives; ++k)
    if (auto e = sample_inside(m - 1))
      add_term(terms, std::move(*e), Rational(-rand_range(rng, 1, 6)));
  for (int k = 0; k < positives; ++k)
    if (auto e = sample_inside(m))
      add_term(terms, std::move(*e), Rational(rand_range(rng, 1, 20)));
  return from_terms(n, terms, true);
}

}  // namespace

SparsePolynomial generate_instance(const GeneratorParams& params) {
  if (params.n < 1) throw std::invalid_argument("generate_instance: need n >= 1");
  if (params.degree < 1) throw std::invalid_argument("generate_instance: need degree >= 1");
  std::mt19937_64 rng(params.seed);
  return params.kind == GeneratorParams::Kind::Polynomial
             ? generate_polynomial(params, rng)
             : generate_signomial(params, rng);
}

}  // namespace certify
