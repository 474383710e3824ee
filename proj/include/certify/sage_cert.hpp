#pragma once

#include <string>

#include "certify/certificates.hpp"
#include "certify/poly.hpp"
#include "certify/rep.hpp"

namespace certify {

// Index of the term with exponent zero, -1 when absent.
int constant_term_index(const SparsePolynomial& f);

struct SageOptions {
  double solver_tol = 1.1920928955078125e-07;  // 2^-23
  Rational round_delta = Rational(1, 8388608);
};

struct SageOutcome {
  bool success = false;
  std::string message;
  SageCertificate certificate;
  double numeric_bound = 0;
  SolveStatus solver_status = SolveStatus::Stalled;
  double solve_seconds = 0;  // numeric relaxation only, rounding excluded
};

// Entropy relaxation plus exact rounding: balance vectors are projected onto
// the exact kernel and repaired by a small exact program, coefficient
// columns are scaled onto their budgets, and each block's constant-term
// coefficient is raised just enough to make its entropy inequality sound.
SageOutcome optsage(const SparsePolynomial& f, const SageOptions& opts = {});

// Exact check that the certificate proves inf f >= bound (the signomial
// reading of f, i.e. over the positive orthant in monomial form).
VerifyResult verify_sage(const SparsePolynomial& f, const SageCertificate& cert);

struct IntsageOptions {
  double solver_tol = 1.1920928955078125e-07;
  Rational round_delta = Rational(1, 8388608);
  int max_rounds = 20;
};

enum class IntsageStatus { Certified, MaxRoundsExceeded };

struct IntsageOutcome {
  IntsageStatus status = IntsageStatus::MaxRoundsExceeded;
  int rounds_used = 0;
  double margin = 0;  // numeric interior margin from the relaxation
  std::string message;
  SageMembershipCertificate certificate;
};

// Membership test with iterative rounding at shrinking tolerance. A
// certificate is produced only when the exact verifier accepts one of the
// rounded decompositions; boundary and outside points exhaust the rounds.
IntsageOutcome intsage(const SparsePolynomial& f, const IntsageOptions& opts = {});

VerifyResult verify_sage_membership(const SparsePolynomial& f,
                                    const SageMembershipCertificate& cert);

}  // namespace certify
