#include "certify/sonc_cert.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include "certify/cover.hpp"
#include "certify/enclosure.hpp"

namespace certify {

namespace {

// exact closed form for the constant-term coefficient when 1/lambda_0 and
// all lambda_alpha / lambda_0 are integers: then
//   x_0 = lambda_0 * |b|^(1/lambda_0) * prod (lambda/x)^(lambda/lambda_0)
// is rational, and the circuit power inequality is tight.
bool exact_constant_coeff(const Rational& b_abs, const RationalVector& lambda,
                          const RationalVector& x, int const_pos, Rational* out) {
  const Rational& l0 = lambda[const_pos];
  if (l0.get_num() != 1) return false;
  Integer d = l0.get_den();
  if (!d.fits_ulong_p() || d.get_ui() > 4096) return false;
  unsigned long du = d.get_ui();
  long bits = static_cast<long>(du) * bitsize(b_abs);
  std::vector<unsigned long> exps(lambda.size(), 0);
  for (size_t i = 0; i < lambda.size(); ++i) {
    if (static_cast<int>(i) == const_pos) continue;
    Rational ratio = lambda[i] / l0;
    if (ratio.get_den() != 1 || !ratio.get_num().fits_ulong_p()) return false;
    exps[i] = ratio.get_num().get_ui();
    bits += static_cast<long>(exps[i]) * (bitsize(lambda[i]) + bitsize(x[i]));
    if (bits > 200000) return false;
  }
  Rational acc = l0 * rational_pow_ui(b_abs, du);
  for (size_t i = 0; i < lambda.size(); ++i) {
    if (static_cast<int>(i) == const_pos) continue;
    acc *= rational_pow_ui(lambda[i] / x[i], exps[i]);
  }
  *out = acc;
  return true;
}

}  // namespace

SoncOutcome optsonc(const SparsePolynomial& p, const SoncOptions& opts) {
  SoncOutcome out;
  SupportPartition part = partition_support(p);
  if (!part.has_constant) {
    out.message = "the support needs a positive constant term";
    return out;
  }
  const Rational& b0 = p.coeffs[part.constant_index];
  if (part.nosq.empty()) {
    out.success = true;
    out.solver_status = SolveStatus::Optimal;
    out.certificate.bound = b0;
    out.numeric_bound = rational_to_double(b0);
    out.message = "all terms are monomial squares";
    return out;
  }
  CoverResult cr = compute_cover(p, part);
  if (!cr.ok()) {
    out.message = cr.failure->message;
    return out;
  }
  auto t0 = std::chrono::steady_clock::now();
  GpSolution gp = solve_gp(p, part, cr.covers, opts.mode, opts.solver_tol);
  out.solve_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.solver_status = gp.status;
  out.numeric_bound = gp.bound;
  if (gp.status != SolveStatus::Optimal) {
    out.message = "relaxation not solved: " + to_string(gp.status);
    return out;
  }

  // project the inner coefficients so each budget column sums exactly to b;
  // entries are simplified first and floored at delta to stay positive (the
  // exact column scaling absorbs both perturbations)
  std::map<int, Rational> colsum;
  std::vector<std::vector<Rational>> xr(cr.covers.size());
  for (size_t ci = 0; ci < cr.covers.size(); ++ci) {
    xr[ci].resize(cr.covers[ci].entries.size());
    for (size_t ei = 0; ei < cr.covers[ci].entries.size(); ++ei) {
      int sup = cr.covers[ci].entries[ei].support_index;
      if (sup == part.constant_index) continue;
      Rational v = round_rational(rational_from_double(std::max(gp.x_tilde[ci][ei], 0.0)),
                                  opts.round_delta);
      if (v < opts.round_delta) v = opts.round_delta;
      xr[ci][ei] = v;
      colsum[sup] += xr[ci][ei];
    }
  }
  for (size_t ci = 0; ci < cr.covers.size(); ++ci)
    for (size_t ei = 0; ei < cr.covers[ci].entries.size(); ++ei) {
      int sup = cr.covers[ci].entries[ei].support_index;
      if (sup == part.constant_index) continue;
      xr[ci][ei] = p.coeffs[sup] * xr[ci][ei] / colsum[sup];
    }

  Rational mass(0);
  out.certificate.circuits.reserve(cr.covers.size());
  for (size_t ci = 0; ci < cr.covers.size(); ++ci) {
    const Cover& cv = cr.covers[ci];
    SoncCircuit circ;
    circ.beta_index = cv.beta_index;
    int const_pos = -1;
    for (size_t ei = 0; ei < cv.entries.size(); ++ei) {
      circ.support.push_back(cv.entries[ei].support_index);
      circ.lambda.push_back(cv.entries[ei].lambda);
      circ.x.push_back(xr[ci][ei]);
      if (cv.entries[ei].support_index == part.constant_index)
        const_pos = static_cast<int>(ei);
    }
    if (const_pos < 0) {
      out.success = false;
      out.message = "internal: cover lost the constant term";
      return out;
    }
    Rational b_abs = rational_abs(p.coeffs[cv.beta_index]);
    Rational x0;
    if (!exact_constant_coeff(b_abs, circ.lambda, circ.x, const_pos, &x0)) {
      const Rational& l0 = circ.lambda[const_pos];
      std::vector<std::pair<Rational, Rational>> terms;
      terms.emplace_back(Rational(1), l0);
      terms.emplace_back(1 / l0, b_abs);
      for (size_t ei = 0; ei < circ.lambda.size(); ++ei) {
        if (static_cast<int>(ei) == const_pos) continue;
        terms.emplace_back(circ.lambda[ei] / l0, circ.lambda[ei]);
        terms.emplace_back(-circ.lambda[ei] / l0, circ.x[ei]);
      }
      x0 = round_up_exp_affine(terms, Rational(0), opts.round_delta);
    }
    circ.x[const_pos] = x0;
    mass += x0;
    out.certificate.circuits.push_back(std::move(circ));
  }
  // publishing a slightly smaller bound keeps the claim valid while keeping
  // its representation small
  out.certificate.bound = round_down(b0 - mass, opts.round_delta);
  out.success = true;
  return out;
}

VerifyResult verify_sonc(const SparsePolynomial& p, const SoncCertificate& cert) {
  SupportPartition part = partition_support(p);
  std::set<int> mosq_set(part.mosq.begin(), part.mosq.end());
  std::set<int> uncovered(part.nosq.begin(), part.nosq.end());

  std::map<int, Rational> colsum;
  for (size_t k = 0; k < cert.circuits.size(); ++k) {
    const SoncCircuit& c = cert.circuits[k];
    std::string tag = "circuit " + std::to_string(k) + ": ";
    if (!uncovered.count(c.beta_index))
      return {false, tag + "term is not an uncovered non-square term"};
    uncovered.erase(c.beta_index);
    size_t m = c.support.size();
    if (m == 0 || c.lambda.size() != m || c.x.size() != m)
      return {false, tag + "inconsistent sizes"};
    std::set<int> seen;
    Rational lsum(0);
    for (size_t i = 0; i < m; ++i) {
      int sup = c.support[i];
      if (!mosq_set.count(sup)) return {false, tag + "support is not a monomial square"};
      if (!seen.insert(sup).second) return {false, tag + "duplicate support index"};
      if (c.lambda[i] <= 0) return {false, tag + "weight is not positive"};
      if (c.x[i] <= 0) return {false, tag + "coefficient is not positive"};
      lsum += c.lambda[i];
      colsum[sup] += c.x[i];
    }
    if (lsum != 1) return {false, tag + "weights do not sum to one"};
    for (int coord = 0; coord < p.n; ++coord) {
      Rational acc(0);
      for (size_t i = 0; i < m; ++i)
        acc += c.lambda[i] * p.exponents[c.support[i]][coord];
      if (acc != p.exponents[c.beta_index][coord])
        return {false, tag + "weights do not reproduce the covered exponent"};
    }
    CheckOutcome power =
        check_circuit_power_leq(rational_abs(p.coeffs[c.beta_index]), c.x, c.lambda);
    if (power == CheckOutcome::Fails)
      return {false, tag + "circuit power inequality is violated"};
    if (power == CheckOutcome::Inconclusive)
      return {false, tag + "circuit power inequality could not be established"};
  }
  if (!uncovered.empty())
    return {false, "non-square term " + std::to_string(*uncovered.begin()) +
                       " is not covered by any circuit"};

  Rational origin_budget(0);
  if (part.has_constant) origin_budget = p.coeffs[part.constant_index];
  for (const auto& [sup, total] : colsum) {
    if (part.has_constant && sup == part.constant_index) continue;
    if (total > p.coeffs[sup])
      return {false, "budget exceeded at support index " + std::to_string(sup)};
  }
  Rational origin_used(0);
  if (part.has_constant) {
    auto it = colsum.find(part.constant_index);
    if (it != colsum.end()) origin_used = it->second;
  }
  if (cert.bound > origin_budget - origin_used)
    return {false, "bound exceeds the remaining constant-term budget"};
  return {true, ""};
}

}  // namespace certify
