#pragma once

#include <vector>

#include "certify/expcone.hpp"
#include "certify/matq.hpp"
#include "certify/poly.hpp"

namespace certify {

// Exponent matrix with a ones row appended: column i is (a_i, 1). A balance
// vector nu for one block must satisfy age_constraint_matrix(f) * nu = 0.
RationalMatrix age_constraint_matrix(const SparsePolynomial& f);

// Indices of the terms with negative coefficient; these anchor the AGE
// blocks (one block per negative term is lossless).
std::vector<int> negative_terms(const SparsePolynomial& f);

struct RepSolution {
  SolveStatus status = SolveStatus::Stalled;
  double objective = 0;                 // bound, or membership margin
  std::vector<std::vector<double>> nu;  // per block, one value per term
  std::vector<std::vector<double>> c;   // per block, one value per term
  NumericSolution raw;
};

// Entropy relaxation of the best constant C such that f - C decomposes into
// AGE signomials anchored at `blocks` plus nonnegative leftovers:
//   minimize sum_j c_const^(j)   (so C = b_const - that mass)
//   s.t. per block j:  M nu^(j) = 0,  nu_i >= 0 (i != j),
//        sum_{i != j} nu_i (log(nu_i / c_i^(j)) - 1) <= c_j^(j)
//   and per term i != const:
//        sum_j c_i^(j) = b_i  when b_i < 0,  <= b_i otherwise.
RepSolution solve_rep_bound(const SparsePolynomial& f, int const_index,
                            const std::vector<int>& blocks, double tol);

// Membership variant: maximize the uniform entropy margin s with every
// coordinate of f covered exactly (negative terms) or with slack (positive
// terms). The margin is positive iff f sits strictly inside the cone
// restricted to this decomposition shape.
RepSolution solve_rep_membership(const SparsePolynomial& f,
                                 const std::vector<int>& blocks, double tol);

}  // namespace certify
