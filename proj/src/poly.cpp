#include "certify/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace certify {

namespace {

constexpr int kMaxExponentMagnitude = 1 << 20;
constexpr size_t kMaxExpansionTerms = size_t(1) << 22;

}  // namespace

bool lex_less(const Exponent& a, const Exponent& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void canonicalize(SparsePolynomial& p, bool allow_negative) {
  if (p.n < 1) throw std::invalid_argument("polynomial: need n >= 1");
  if (p.exponents.size() != p.coeffs.size())
    throw std::invalid_argument("polynomial: exponent/coefficient count mismatch");
  for (size_t j = 0; j < p.exponents.size(); ++j) {
    if (static_cast<int>(p.exponents[j].size()) != p.n)
      throw std::invalid_argument("polynomial: term " + std::to_string(j) +
                                  " has exponent of wrong length");
    for (int e : p.exponents[j]) {
      if (e > kMaxExponentMagnitude || e < -kMaxExponentMagnitude)
        throw std::invalid_argument("polynomial: term " + std::to_string(j) +
                                    " exponent magnitude too large");
      if (!allow_negative && e < 0)
        throw std::invalid_argument("polynomial: term " + std::to_string(j) +
                                    " has negative exponent");
    }
    if (p.coeffs[j] == 0)
      throw std::invalid_argument("polynomial: term " + std::to_string(j) +
                                  " has zero coefficient");
    p.coeffs[j].canonicalize();
  }
  std::vector<int> order(p.exponents.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return lex_less(p.exponents[a], p.exponents[b]); });
  std::vector<Exponent> ex;
  std::vector<Rational> co;
  ex.reserve(order.size());
  co.reserve(order.size());
  for (int j : order) {
    ex.push_back(p.exponents[j]);
    co.push_back(p.coeffs[j]);
  }
  for (size_t j = 1; j < ex.size(); ++j)
    if (ex[j] == ex[j - 1])
      throw std::invalid_argument("polynomial: duplicate exponent in support");
  p.exponents = std::move(ex);
  p.coeffs = std::move(co);
}

SupportPartition partition_support(const SparsePolynomial& p) {
  SupportPartition part;
  for (int j = 0; j < p.term_count(); ++j) {
    bool all_even = std::all_of(p.exponents[j].begin(), p.exponents[j].end(),
                                [](int e) { return e % 2 == 0 && e >= 0; });
    bool zero = std::all_of(p.exponents[j].begin(), p.exponents[j].end(),
                            [](int e) { return e == 0; });
    if (zero) {
      part.has_constant = true;
      part.constant_index = j;
    }
    if (all_even && p.coeffs[j] > 0)
      part.mosq.push_back(j);
    else
      part.nosq.push_back(j);
  }
  return part;
}

long degree(const SparsePolynomial& p) {
  long d = 0;
  for (const auto& e : p.exponents) {
    long s = 0;
    for (int v : e) s += std::abs(static_cast<long>(v));
    d = std::max(d, s);
  }
  return d;
}

int bitsize(const SparsePolynomial& p) {
  int b = 1;
  for (const auto& c : p.coeffs) b = std::max(b, bitsize(c));
  return b;
}

Rational evaluate(const SparsePolynomial& p, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != p.n)
    throw std::invalid_argument("evaluate: point dimension mismatch");
  Rational acc(0);
  for (int j = 0; j < p.term_count(); ++j) {
    Rational term = p.coeffs[j];
    for (int i = 0; i < p.n; ++i) {
      int e = p.exponents[j][i];
      if (e == 0) continue;
      if (x[i] == 0) {
        if (e < 0) throw std::domain_error("evaluate: zero coordinate with negative exponent");
        term = 0;
        break;
      }
      Rational base = e > 0 ? x[i] : Rational(1) / x[i];
      unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), base.get_num_mpz_t(), k);
      mpz_pow_ui(pw.get_den_mpz_t(), base.get_den_mpz_t(), k);
      pw.canonicalize();
      term *= pw;
    }
    acc += term;
  }
  return acc;
}

double evaluate_double(const SparsePolynomial& p, const std::vector<double>& x) {
  double acc = 0;
  for (int j = 0; j < p.term_count(); ++j) {
    double term = rational_to_double(p.coeffs[j]);
    for (int i = 0; i < p.n; ++i)
      if (p.exponents[j][i] != 0) term *= std::pow(x[i], p.exponents[j][i]);
    acc += term;
  }
  return acc;
}

double signomial_value(const SparsePolynomial& f, const std::vector<double>& x) {
  double acc = 0;
  for (int j = 0; j < f.term_count(); ++j) {
    double dot = 0;
    for (int i = 0; i < f.n; ++i) dot += f.exponents[j][i] * x[i];
    acc += rational_to_double(f.coeffs[j]) * std::exp(dot);
  }
  return acc;
}

SparsePolynomial expand_signomial(const SparsePolynomial& g) {
  for (const auto& e : g.exponents)
    for (int v : e)
      if (v < 0) throw std::invalid_argument("expand_signomial: negative exponent in input");

  struct LexCmp {
    bool operator()(const Exponent& a, const Exponent& b) const { return lex_less(a, b); }
  };
  std::map<Exponent, Rational, LexCmp> acc;

  for (int j = 0; j < g.term_count(); ++j) {
    // Expand coeff * prod_i (exp(x_i) - exp(-x_i))^{a_i} term by term.
    std::vector<std::pair<Exponent, Rational>> partial = {{Exponent(g.n, 0), g.coeffs[j]}};
    for (int i = 0; i < g.n; ++i) {
      int a = g.exponents[j][i];
      if (a == 0) continue;
      std::vector<std::pair<int, Integer>> factor;  // exponent on x_i, signed binomial
      for (int k = 0; k <= a; ++k) {
        Integer binom;
        mpz_bin_uiui(binom.get_mpz_t(), a, k);
        if (k % 2 == 1) binom = -binom;
        factor.emplace_back(a - 2 * k, binom);
      }
      std::vector<std::pair<Exponent, Rational>> next;
      next.reserve(partial.size() * factor.size());
      for (const auto& [ex, co] : partial)
        for (const auto& [e_i, binom] : factor) {
          Exponent ex2 = ex;
          ex2[i] = e_i;
          next.emplace_back(std::move(ex2), co * Rational(binom));
        }
      if (next.size() > kMaxExpansionTerms)
        throw std::invalid_argument("expand_signomial: expansion too large");
      partial = std::move(next);
    }
    for (auto& [ex, co] : partial) acc[ex] += co;
  }

  SparsePolynomial f;
  f.n = g.n;
  for (auto& [ex, co] : acc) {
    if (co == 0) continue;
    co.canonicalize();
    f.exponents.push_back(ex);
    f.coeffs.push_back(co);
  }
  return f;
}

SparsePolynomial parse_instance(const std::string& json_text, bool allow_negative) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("instance: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("terms"))
    throw std::invalid_argument("instance: expected object with \"n\" and \"terms\"");
  if (!doc["n"].is_number_integer())
    throw std::invalid_argument("instance: \"n\" must be an integer");
  SparsePolynomial p;
  p.n = doc["n"].get<int>();
  if (p.n < 1) throw std::invalid_argument("instance: need n >= 1");
  if (!doc["terms"].is_array()) throw std::invalid_argument("instance: \"terms\" must be an array");
  int idx = 0;
  for (const auto& term : doc["terms"]) {
    std::string where = "instance: term " + std::to_string(idx);
    if (!term.is_object() || !term.contains("exponent") || !term.contains("coeff"))
      throw std::invalid_argument(where + ": expected {\"exponent\", \"coeff\"}");
    const auto& ev = term["exponent"];
    if (!ev.is_array()) throw std::invalid_argument(where + ": \"exponent\" must be an array");
    Exponent e;
    for (const auto& c : ev) {
      if (!c.is_number_integer())
        throw std::invalid_argument(where + ": exponent entries must be integers");
      e.push_back(c.get<int>());
    }
    const auto& cv = term["coeff"];
    Rational coeff;
    if (cv.is_string()) {
      auto parsed = rational_from_string(cv.get<std::string>());
      if (!parsed)
        throw std::invalid_argument(where + ": coefficient \"" + cv.get<std::string>() +
                                    "\" is not a rational \"num/den\"");
      coeff = *parsed;
    } else if (cv.is_number_integer()) {
      coeff = Rational(cv.get<long>());
    } else if (cv.is_number_float()) {
      throw std::invalid_argument(where + ": floating-point coefficients are not accepted; "
                                          "use a \"num/den\" string");
    } else {
      throw std::invalid_argument(where + ": coefficient must be a \"num/den\" string");
    }
    if (coeff == 0) throw std::invalid_argument(where + ": zero coefficient");
    p.exponents.push_back(std::move(e));
    p.coeffs.push_back(coeff);
    ++idx;
  }
  try {
    canonicalize(p, allow_negative);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("instance: ") + e.what());
  }
  return p;
}

std::string serialize_instance(const SparsePolynomial& p) {
  nlohmann::json doc;
  doc["n"] = p.n;
  doc["terms"] = nlohmann::json::array();
  for (int j = 0; j < p.term_count(); ++j) {
    nlohmann::json term;
    term["exponent"] = p.exponents[j];
    term["coeff"] = rational_to_string(p.coeffs[j]);
    doc["terms"].push_back(std::move(term));
  }
  return doc.dump(2);
}

}  // namespace certify
