#pragma once

#include <vector>

#include "certify/cover.hpp"
#include "certify/expcone.hpp"
#include "certify/poly.hpp"

namespace certify {

enum class GpMode { LogDomain, Direct };

// Numeric output of the geometric-program relaxation. x_tilde is aligned
// with the covers: x_tilde[ci][ei] is the inner-term coefficient granted to
// covers[ci].entries[ei].
struct GpSolution {
  SolveStatus status = SolveStatus::Stalled;
  double bound = 0;
  std::vector<std::vector<double>> x_tilde;
  NumericSolution raw;
};

// Relaxation: minimize the total coefficient mass drawn from the constant
// term, subject to per-term budgets sum_beta X[beta][alpha] <= b_alpha and
// the circuit-number equations
//   sum_alpha lambda_alpha log(X[beta][alpha] / lambda_alpha) = log |b_beta|.
// The reported bound is b_0 minus the mass at the constant term.
//
// LogDomain (default) works on u = log X with epigraph variables t >= e^u;
// Direct keeps X itself and bounds log X from below through the cone. The
// two must agree to solver accuracy.
GpSolution solve_gp(const SparsePolynomial& p, const SupportPartition& part,
                    const std::vector<Cover>& covers, GpMode mode, double tol);

}  // namespace certify
