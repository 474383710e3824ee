#pragma once

#include <string>

#include "certify/certificates.hpp"
#include "certify/gp.hpp"
#include "certify/poly.hpp"

namespace certify {

struct SoncOptions {
  double solver_tol = 1.1920928955078125e-07;  // 2^-23
  Rational round_delta = Rational(1, 8388608);
  GpMode mode = GpMode::LogDomain;
};

struct SoncOutcome {
  bool success = false;
  std::string message;
  SoncCertificate certificate;
  double numeric_bound = 0;
  SolveStatus solver_status = SolveStatus::Stalled;
  double solve_seconds = 0;  // numeric relaxation only, rounding excluded
};

// Numeric relaxation followed by exact rounding-projection. On success the
// certificate passes verify_sonc by construction of the rounded data; the
// verifier below stays fully independent of that construction.
SoncOutcome optsonc(const SparsePolynomial& p, const SoncOptions& opts = {});

// Exact check that the certificate proves p >= bound: disjoint circuits over
// the non-square support, weights matching each covered exponent, budgets
// respected, and every circuit power inequality |b| <= prod (x/lambda)^lambda
// established in exact or directed-rounding arithmetic.
VerifyResult verify_sonc(const SparsePolynomial& p, const SoncCertificate& cert);

}  // namespace certify
