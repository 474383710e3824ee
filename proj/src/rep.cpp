#include "certify/rep.hpp"

#include <limits>
#include <stdexcept>

namespace certify {

RationalMatrix age_constraint_matrix(const SparsePolynomial& f) {
  const int t = f.term_count();
  RationalMatrix q(f.n + 1, t);
  for (int i = 0; i < t; ++i) {
    for (int c = 0; c < f.n; ++c) q.at(c, i) = f.exponents[i][c];
    q.at(f.n, i) = 1;
  }
  return q;
}

std::vector<int> negative_terms(const SparsePolynomial& f) {
  std::vector<int> neg;
  for (int i = 0; i < f.term_count(); ++i)
    if (f.coeffs[i] < 0) neg.push_back(i);
  return neg;
}

namespace {

std::vector<int> independent_rows(const RationalMatrix& q) {
  RationalMatrix qt = transpose(q);
  return rref(qt);  // pivot columns of q^T are independent rows of q
}

struct RepLayout {
  int t = 0, nb = 0;
  bool membership = false;
  std::vector<int> blocks;
  std::vector<std::vector<int>> w_var;  // [k][i], -1 at the anchor
  int slack_var = -1;
  int num_vars = 0;

  int nu_var(int k, int i) const { return k * t + i; }
  int c_var(int k, int i) const { return nb * t + k * t + i; }
};

RepSolution solve_rep(const SparsePolynomial& f, int const_index,
                      const std::vector<int>& blocks, bool membership, double tol) {
  const int t = f.term_count();
  RepSolution out;
  if (blocks.empty()) {
    out.status = SolveStatus::Optimal;
    out.objective = membership ? std::numeric_limits<double>::infinity()
                               : rational_to_double(f.coeffs[const_index]);
    return out;
  }
  for (int j : blocks)
    if (j < 0 || j >= t) throw std::invalid_argument("solve_rep: block out of range");

  // Everything here (nu, c, w, slack, objective) is 1-homogeneous in the
  // coefficient vector, so normalize by the largest magnitude and scale the
  // numeric answers back afterwards.  Keeps the interior-point data near unit
  // size even when coefficients span several orders of magnitude.
  Rational gamma = 1;
  for (const auto& cf : f.coeffs) {
    Rational a = rational_abs(cf);
    if (a > gamma) gamma = a;
  }
  SparsePolynomial fs = f;
  for (auto& cf : fs.coeffs) cf /= gamma;
  const double gamma_d = rational_to_double(gamma);

  RepLayout lay;
  lay.t = t;
  lay.nb = static_cast<int>(blocks.size());
  lay.membership = membership;
  lay.blocks = blocks;
  int next = 2 * lay.nb * t;
  lay.w_var.assign(lay.nb, std::vector<int>(t, -1));
  for (int k = 0; k < lay.nb; ++k)
    for (int i = 0; i < t; ++i)
      if (i != blocks[k]) lay.w_var[k][i] = next++;
  if (membership) lay.slack_var = next++;
  lay.num_vars = next;

  ExpConeProgram prog;
  prog.num_vars = lay.num_vars;
  prog.c.assign(lay.num_vars, 0.0);
  if (membership)
    prog.c[lay.slack_var] = -1.0;  // maximize the margin
  else
    for (int k = 0; k < lay.nb; ++k) prog.c[lay.c_var(k, const_index)] = 1.0;

  // equalities: balance rows per block, then exact coupling on negative terms
  RationalMatrix q = age_constraint_matrix(f);
  std::vector<int> qrows = independent_rows(q);
  int arow = 0;
  for (int k = 0; k < lay.nb; ++k)
    for (int r : qrows) {
      for (int i = 0; i < t; ++i)
        if (q.at(r, i) != 0)
          prog.a_entries.push_back(
              SparseEntry{arow, lay.nu_var(k, i), rational_to_double(q.at(r, i))});
      prog.b.push_back(0.0);
      ++arow;
    }
  for (int i = 0; i < t; ++i) {
    if (fs.coeffs[i] >= 0) continue;
    if (!membership && i == const_index) continue;  // the bound absorbs it
    for (int k = 0; k < lay.nb; ++k)
      prog.a_entries.push_back(SparseEntry{arow, lay.c_var(k, i), 1.0});
    prog.b.push_back(rational_to_double(fs.coeffs[i]));
    ++arow;
  }

  // orthant rows: entropy budget per block, slack coupling on positive terms
  int grow = 0;
  for (int k = 0; k < lay.nb; ++k) {
    prog.g_entries.push_back(SparseEntry{grow, lay.c_var(k, blocks[k]), -1.0});
    for (int i = 0; i < t; ++i)
      if (i != blocks[k])
        prog.g_entries.push_back(SparseEntry{grow, lay.w_var[k][i], 1.0});
    if (membership) prog.g_entries.push_back(SparseEntry{grow, lay.slack_var, 1.0});
    prog.h.push_back(0.0);
    ++grow;
  }
  for (int i = 0; i < t; ++i) {
    if (fs.coeffs[i] < 0) continue;
    if (!membership && i == const_index) continue;
    for (int k = 0; k < lay.nb; ++k)
      prog.g_entries.push_back(SparseEntry{grow, lay.c_var(k, i), 1.0});
    prog.h.push_back(rational_to_double(fs.coeffs[i]));
    ++grow;
  }
  prog.cone.nonneg = grow;

  // exponential triples (-w - nu, nu, c) encode nu log(nu/c) - nu <= w
  prog.cone.exp_triples = lay.nb * (t - 1);
  int o = grow;
  for (int k = 0; k < lay.nb; ++k)
    for (int i = 0; i < t; ++i) {
      if (i == blocks[k]) continue;
      prog.g_entries.push_back(SparseEntry{o, lay.w_var[k][i], 1.0});
      prog.g_entries.push_back(SparseEntry{o, lay.nu_var(k, i), 1.0});
      prog.h.push_back(0.0);
      prog.g_entries.push_back(SparseEntry{o + 1, lay.nu_var(k, i), -1.0});
      prog.h.push_back(0.0);
      prog.g_entries.push_back(SparseEntry{o + 2, lay.c_var(k, i), -1.0});
      prog.h.push_back(0.0);
      o += 3;
    }

  out.raw = solve_exp_cone(prog, tol);
  out.status = out.raw.status;
  out.nu.assign(lay.nb, std::vector<double>(t, 0.0));
  out.c.assign(lay.nb, std::vector<double>(t, 0.0));
  if (out.status != SolveStatus::Optimal) return out;
  for (int k = 0; k < lay.nb; ++k)
    for (int i = 0; i < t; ++i) {
      out.nu[k][i] = gamma_d * out.raw.x[lay.nu_var(k, i)];
      out.c[k][i] = gamma_d * out.raw.x[lay.c_var(k, i)];
    }
  if (membership) {
    out.objective = gamma_d * out.raw.x[lay.slack_var];
  } else {
    double mass = 0;
    for (int k = 0; k < lay.nb; ++k) mass += out.raw.x[lay.c_var(k, const_index)];
    out.objective = gamma_d * (rational_to_double(fs.coeffs[const_index]) - mass);
  }
  return out;
}

}  // namespace

RepSolution solve_rep_bound(const SparsePolynomial& f, int const_index,
                            const std::vector<int>& blocks, double tol) {
  if (const_index < 0 || const_index >= f.term_count())
    throw std::invalid_argument("solve_rep_bound: bad constant index");
  return solve_rep(f, const_index, blocks, false, tol);
}

RepSolution solve_rep_membership(const SparsePolynomial& f,
                                 const std::vector<int>& blocks, double tol) {
  return solve_rep(f, -1, blocks, true, tol);
}

}  // namespace certify
