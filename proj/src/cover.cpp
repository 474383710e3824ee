#include "certify/cover.hpp"

#include <algorithm>
#include <stdexcept>

namespace certify {

std::vector<bool> newton_vertices(const std::vector<Exponent>& points) {
  const int k = static_cast<int>(points.size());
  std::vector<bool> vertex(k, false);
  if (k == 0) return vertex;
  const int n = static_cast<int>(points[0].size());
  for (int i = 0; i < k; ++i) {
    if (k == 1) {
      vertex[i] = true;
      continue;
    }
    // i is a vertex iff it is not a convex combination of the others
    LinearProgram lp(k - 1);
    for (int c = 0; c < n; ++c) {
      RationalVector row;
      row.reserve(k - 1);
      for (int j = 0; j < k; ++j)
        if (j != i) row.emplace_back(points[j][c]);
      lp.add_row(std::move(row), Rel::Eq, Rational(points[i][c]));
    }
    lp.add_row(RationalVector(k - 1, Rational(1)), Rel::Eq, Rational(1));
    vertex[i] = solve_lp_exact(lp).status == LpStatus::Infeasible;
  }
  return vertex;
}

void reduce_to_affinely_independent(const std::vector<Exponent>& points,
                                    std::vector<int>& subset, RationalVector& lambda,
                                    int keep_index) {
  if (subset.size() != lambda.size())
    throw std::invalid_argument("reduce_to_affinely_independent: size mismatch");
  const int n = subset.empty() ? 0 : static_cast<int>(points[subset[0]].size());
  for (;;) {
    const int k = static_cast<int>(subset.size());
    if (k <= 1) return;
    RationalMatrix m(n + 1, k);
    for (int j = 0; j < k; ++j) {
      for (int c = 0; c < n; ++c) m.at(c, j) = points[subset[j]][c];
      m.at(n, j) = 1;
    }
    RationalMatrix ns = nullspace(m);
    if (ns.cols == 0) return;  // affinely independent

    RationalVector mu(k);
    for (int j = 0; j < k; ++j) mu[j] = ns.at(j, 0);
    int keep_pos = -1;
    for (int j = 0; j < k; ++j)
      if (subset[j] == keep_index) keep_pos = j;
    // the ones row forces sum mu = 0, so both signs occur; walk in the
    // direction that cannot zero out the kept point
    int dir = (keep_pos >= 0 && mu[keep_pos] > 0) ? -1 : 1;
    bool have = false;
    Rational theta;
    for (int j = 0; j < k; ++j) {
      Rational nu = Rational(dir) * mu[j];
      if (nu <= 0) continue;
      Rational ratio = lambda[j] / nu;
      if (!have || ratio < theta) {
        have = true;
        theta = ratio;
      }
    }
    if (!have) throw std::logic_error("reduce_to_affinely_independent: no blocking weight");
    std::vector<int> new_subset;
    RationalVector new_lambda;
    for (int j = 0; j < k; ++j) {
      Rational v = lambda[j] - theta * Rational(dir) * mu[j];
      if (v == 0) continue;
      if (v < 0) throw std::logic_error("reduce_to_affinely_independent: negative weight");
      new_subset.push_back(subset[j]);
      new_lambda.push_back(v);
    }
    subset = std::move(new_subset);
    lambda = std::move(new_lambda);
  }
}

CoverResult compute_cover(const SparsePolynomial& p, const SupportPartition& part) {
  CoverResult result;
  const int n = p.n;
  const int ms = static_cast<int>(part.mosq.size());
  int const_pos = -1;
  if (part.has_constant)
    for (int j = 0; j < ms; ++j)
      if (part.mosq[j] == part.constant_index) const_pos = j;

  for (int beta : part.nosq) {
    LinearProgram lp(ms);
    for (int c = 0; c < n; ++c) {
      RationalVector row(ms);
      for (int j = 0; j < ms; ++j) row[j] = p.exponents[part.mosq[j]][c];
      lp.add_row(std::move(row), Rel::Eq, Rational(p.exponents[beta][c]));
    }
    lp.add_row(RationalVector(ms, Rational(1)), Rel::Eq, Rational(1));
    if (const_pos >= 0) {
      lp.maximize = true;
      lp.objective[const_pos] = 1;
    }
    LpResult sol = solve_lp_exact(lp);
    if (sol.status != LpStatus::Optimal) {
      result.failure = CoverFailure{
          beta, CoverFailureReason::BetaOutsideHull,
          "term " + std::to_string(beta) +
              " lies outside the convex hull of the square support"};
      return result;
    }
    if (const_pos >= 0 && sol.x[const_pos] == 0) {
      result.failure = CoverFailure{
          beta, CoverFailureReason::NoConstantWeight,
          "no cover of term " + std::to_string(beta) +
              " can give the constant term positive weight"};
      return result;
    }

    std::vector<int> subset;
    RationalVector lambda;
    for (int j = 0; j < ms; ++j) {
      if (sol.x[j] == 0) continue;
      subset.push_back(part.mosq[j]);
      lambda.push_back(sol.x[j]);
    }
    int keep = part.has_constant ? part.constant_index : -1;
    reduce_to_affinely_independent(p.exponents, subset, lambda, keep);

    Cover cv;
    cv.beta_index = beta;
    for (size_t j = 0; j < subset.size(); ++j)
      cv.entries.push_back(CoverEntry{subset[j], lambda[j]});
    std::sort(cv.entries.begin(), cv.entries.end(),
              [](const CoverEntry& a, const CoverEntry& b) {
                return a.support_index < b.support_index;
              });
    result.covers.push_back(std::move(cv));
  }
  return result;
}

}  // namespace certify
