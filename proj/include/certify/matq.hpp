#pragma once

#include <optional>
#include <vector>

#include "certify/rational.hpp"

namespace certify {

using RationalVector = std::vector<Rational>;

struct RationalMatrix {
  int rows = 0, cols = 0;
  std::vector<Rational> data;  // row-major

  RationalMatrix() = default;
  RationalMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

  Rational& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  const Rational& at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

  static RationalMatrix identity(int n);
};

bool operator==(const RationalMatrix& a, const RationalMatrix& b);

RationalMatrix transpose(const RationalMatrix& m);
RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b);
RationalVector matvec(const RationalMatrix& m, const RationalVector& v);

// In-place reduced row echelon form; returns the pivot column indices.
std::vector<int> rref(RationalMatrix& m);

int rank(RationalMatrix m);

// Solves a square nonsingular system; nullopt when singular.
std::optional<RationalVector> solve_square(RationalMatrix a, RationalVector b);
std::optional<RationalMatrix> inverse(const RationalMatrix& a);

// Basis of the nullspace {x : m x = 0}, as columns.
RationalMatrix nullspace(RationalMatrix m);

// Moore-Penrose pseudo-inverse over the rationals, via the full-rank
// factorization m = F G with F the pivot columns and G the rref rows:
// pinv = G^T (G G^T)^-1 (F^T F)^-1 F^T. Satisfies all four Penrose identities
// exactly.
RationalMatrix pseudo_inverse_exact(const RationalMatrix& m);

// Max bit size over the entries.
int matrix_bitsize(const RationalMatrix& m);

}  // namespace certify
