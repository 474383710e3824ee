#pragma once

#include <optional>
#include <string>
#include <vector>

#include "certify/lp.hpp"
#include "certify/poly.hpp"

namespace certify {

// Convex-combination witness for one non-square term: the barycentric
// weights lambda over support indices satisfying
//   sum lambda_a * exps[a] = exps[beta],  sum lambda_a = 1,  lambda > 0,
// restricted to at most n+1 affinely independent square terms.
struct CoverEntry {
  int support_index = -1;  // index into the polynomial's term list
  Rational lambda;
};

struct Cover {
  int beta_index = -1;  // the covered non-square term
  std::vector<CoverEntry> entries;
};

enum class CoverFailureReason { BetaOutsideHull, NoConstantWeight };

struct CoverFailure {
  int beta_index = -1;
  CoverFailureReason reason = CoverFailureReason::BetaOutsideHull;
  std::string message;
};

struct CoverResult {
  std::vector<Cover> covers;                 // one per non-square term, in order
  std::optional<CoverFailure> failure;       // set when any term is uncoverable
  bool ok() const { return !failure.has_value(); }
};

// Flags the support points that are vertices of their convex hull.
std::vector<bool> newton_vertices(const std::vector<Exponent>& points);

// Caratheodory step: shrinks {subset, lambda} until the selected points are
// affinely independent, preserving both linear invariants and keeping
// keep_index (an index into points, or -1) in the subset with positive
// weight whenever it starts there.
void reduce_to_affinely_independent(const std::vector<Exponent>& points,
                                    std::vector<int>& subset, RationalVector& lambda,
                                    int keep_index);

// One cover per non-square term. When the support has a constant term the
// cover LP maximizes the weight placed on it, so the constant participates in
// every cover whenever that is possible at all.
CoverResult compute_cover(const SparsePolynomial& p, const SupportPartition& part);

}  // namespace certify
