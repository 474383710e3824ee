#pragma once

#include <string>
#include <vector>

#include "certify/rational.hpp"

namespace certify {

using RationalVector = std::vector<Rational>;

// One nonnegative circuit: the support indices carry coefficients x > 0, the
// covered term keeps its original coefficient, and lambda are the
// barycentric weights tying them together.
struct SoncCircuit {
  int beta_index = -1;
  std::vector<int> support;
  RationalVector lambda;
  RationalVector x;
};

struct SoncCertificate {
  Rational bound;
  std::vector<SoncCircuit> circuits;
};

// One AGE block anchored at term `anchor`: c holds the block's coefficient
// vector (nonnegative off the anchor), nu the balance vector with
// age_constraint_matrix(f) * nu = 0.
struct SageBlock {
  int anchor = -1;
  RationalVector nu;
  RationalVector c;
};

struct SageCertificate {
  Rational bound;
  std::vector<SageBlock> blocks;
};

struct SageMembershipCertificate {
  std::vector<SageBlock> blocks;
};

struct VerifyResult {
  bool ok = false;
  std::string reason;
};

int certificate_bitsize(const SoncCertificate& cert);
int certificate_bitsize(const SageCertificate& cert);
int certificate_bitsize(const SageMembershipCertificate& cert);

}  // namespace certify
