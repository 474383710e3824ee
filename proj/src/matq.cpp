#include "certify/matq.hpp"

#include <stdexcept>

namespace certify {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
  return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
}

RationalMatrix transpose(const RationalMatrix& m) {
  RationalMatrix t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: dimension mismatch");
  RationalMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const Rational& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols; ++j) {
        if (b.at(k, j) == 0) continue;
        c.at(i, j) += aik * b.at(k, j);
      }
    }
  return c;
}

RationalVector matvec(const RationalMatrix& m, const RationalVector& v) {
  if (static_cast<int>(v.size()) != m.cols)
    throw std::invalid_argument("matvec: dimension mismatch");
  RationalVector r(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0 && v[j] != 0) r[i] += m.at(i, j) * v[j];
  return r;
}

std::vector<int> rref(RationalMatrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int sel = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < m.cols; ++j) swap(m.at(sel, j), m.at(row, j));
    Rational piv = m.at(row, col);
    for (int j = col; j < m.cols; ++j) m.at(row, j) /= piv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      Rational f = m.at(i, col);
      for (int j = col; j < m.cols; ++j)
        if (m.at(row, j) != 0) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(RationalMatrix m) { return static_cast<int>(rref(m).size()); }

std::optional<RationalVector> solve_square(RationalMatrix a, RationalVector b) {
  if (a.rows != a.cols || static_cast<int>(b.size()) != a.rows)
    throw std::invalid_argument("solve_square: dimension mismatch");
  int n = a.rows;
  RationalMatrix aug(n, n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n) = b[i];
  }
  std::vector<int> piv = rref(aug);
  if (static_cast<int>(piv.size()) != n || (!piv.empty() && piv.back() == n))
    return std::nullopt;
  RationalVector x(n);
  for (int i = 0; i < n; ++i) x[i] = aug.at(i, n);
  return x;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  if (a.rows != a.cols) throw std::invalid_argument("inverse: matrix not square");
  int n = a.rows;
  RationalMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = 1;
  }
  std::vector<int> piv = rref(aug);
  if (static_cast<int>(piv.size()) != n || piv.back() >= n) return std::nullopt;
  RationalMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

RationalMatrix nullspace(RationalMatrix m) {
  std::vector<int> piv = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < m.cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  RationalMatrix basis(m.cols, static_cast<int>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    basis.at(fc, static_cast<int>(k)) = 1;
    for (size_t r = 0; r < piv.size(); ++r)
      basis.at(piv[r], static_cast<int>(k)) = -m.at(static_cast<int>(r), fc);
  }
  return basis;
}

RationalMatrix pseudo_inverse_exact(const RationalMatrix& m) {
  RationalMatrix r = m;
  std::vector<int> piv = rref(r);
  int rk = static_cast<int>(piv.size());
  if (rk == 0) return RationalMatrix(m.cols, m.rows);  // zero matrix maps to zero
  RationalMatrix f(m.rows, rk), g(rk, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int k = 0; k < rk; ++k) f.at(i, k) = m.at(i, piv[k]);
  for (int k = 0; k < rk; ++k)
    for (int j = 0; j < m.cols; ++j) g.at(k, j) = r.at(k, j);
  RationalMatrix ft = transpose(f), gt = transpose(g);
  auto ggt_inv = inverse(matmul(g, gt));
  auto ftf_inv = inverse(matmul(ft, f));
  if (!ggt_inv || !ftf_inv)
    throw std::logic_error("pseudo_inverse_exact: rank factorization not full rank");
  return matmul(matmul(gt, *ggt_inv), matmul(*ftf_inv, ft));
}

int matrix_bitsize(const RationalMatrix& m) {
  int best = 0;
  for (const Rational& q : m.data) best = std::max(best, bitsize(q));
  return best;
}

}  // namespace certify
