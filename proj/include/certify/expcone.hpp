#pragma once

#include <string>
#include <vector>

namespace certify {

// Conic program
//   minimize    c . x
//   subject to  A x = b
//               G x + s = h,   s in K
// where K = R+^nonneg  x  Kexp^exp_triples and Kexp is the exponential cone
//   cl{ (u, v, w) : v > 0, v * exp(u / v) <= w }.
struct ConeSpec {
  int nonneg = 0;
  int exp_triples = 0;
  int dim() const { return nonneg + 3 * exp_triples; }
};

struct SparseEntry {
  int row = 0, col = 0;
  double value = 0;
};

struct ExpConeProgram {
  int num_vars = 0;
  std::vector<double> c;
  std::vector<SparseEntry> a_entries;
  std::vector<double> b;
  std::vector<SparseEntry> g_entries;
  std::vector<double> h;
  ConeSpec cone;
};

enum class SolveStatus {
  Optimal,
  PrimalInfeasible,
  DualInfeasible,
  Stalled,
  IterationLimit,
};

std::string to_string(SolveStatus status);

struct NumericSolution {
  SolveStatus status = SolveStatus::Stalled;
  std::vector<double> x, y, z, s;
  double primal_objective = 0;
  double dual_objective = 0;
  double primal_residual = 0;
  double dual_residual = 0;
  double relative_gap = 0;
  int iterations = 0;
};

// Homogeneous self-dual interior-point method with the primal barrier of the
// exponential cone. tol bounds the relative primal/dual residuals and gap.
NumericSolution solve_exp_cone(const ExpConeProgram& prog, double tol,
                               int max_iters = 400);

}  // namespace certify
