#include <cmath>

#include "certify/expcone.hpp"
#include "doctest.h"

using namespace certify;

namespace {

constexpr double kTol = 1.1920928955078125e-07;  // 2^-23

void add(std::vector<SparseEntry>& entries, int row, int col, double v) {
  entries.push_back(SparseEntry{row, col, v});
}

}  // namespace

TEST_CASE("pure linear program through the cone") {
  // min x0 + x1  s.t.  x0 + 2 x1 = 1,  x >= 0   ->  x = (0, 1/2)
  ExpConeProgram prog;
  prog.num_vars = 2;
  prog.c = {1.0, 1.0};
  add(prog.a_entries, 0, 0, 1.0);
  add(prog.a_entries, 0, 1, 2.0);
  prog.b = {1.0};
  add(prog.g_entries, 0, 0, -1.0);
  add(prog.g_entries, 1, 1, -1.0);
  prog.h = {0.0, 0.0};
  prog.cone.nonneg = 2;

  NumericSolution sol = solve_exp_cone(prog, kTol);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.primal_objective == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(std::abs(sol.x[0]) < 1e-5);
  CHECK(sol.x[1] == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(sol.primal_residual <= kTol);
  CHECK(sol.dual_residual <= kTol);
  CHECK(sol.relative_gap <= kTol);
}

TEST_CASE("scalar exponential epigraph") {
  // min w  s.t.  (1, 1, w) in Kexp   ->  w = e
  ExpConeProgram prog;
  prog.num_vars = 1;
  prog.c = {1.0};
  add(prog.g_entries, 2, 0, -1.0);
  prog.h = {1.0, 1.0, 0.0};
  prog.cone.exp_triples = 1;

  NumericSolution sol = solve_exp_cone(prog, kTol);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-6));
}

TEST_CASE("scalar logarithm hypograph") {
  // max u  s.t.  (u, 1, 2) in Kexp   ->  u = log 2
  ExpConeProgram prog;
  prog.num_vars = 1;
  prog.c = {-1.0};
  add(prog.g_entries, 0, 0, -1.0);
  prog.h = {0.0, 1.0, 2.0};
  prog.cone.exp_triples = 1;

  NumericSolution sol = solve_exp_cone(prog, kTol);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("symmetric sum of exponentials") {
  // min sum_i w_i  s.t.  (u_i, 1, w_i) in Kexp,  sum u_i = 0   ->  3 at u = 0
  const int k = 3;
  ExpConeProgram prog;
  prog.num_vars = 2 * k;  // (u_i, w_i)
  prog.c.assign(2 * k, 0.0);
  for (int i = 0; i < k; ++i) prog.c[2 * i + 1] = 1.0;
  for (int i = 0; i < k; ++i) add(prog.a_entries, 0, 2 * i, 1.0);
  prog.b = {0.0};
  prog.h.assign(3 * k, 0.0);
  for (int i = 0; i < k; ++i) {
    add(prog.g_entries, 3 * i, 2 * i, -1.0);
    prog.h[3 * i + 1] = 1.0;
    add(prog.g_entries, 3 * i + 2, 2 * i + 1, -1.0);
  }
  prog.cone.exp_triples = k;

  NumericSolution sol = solve_exp_cone(prog, kTol);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.primal_objective == doctest::Approx(3.0).epsilon(1e-6));
  for (int i = 0; i < k; ++i)
    CHECK(std::abs(sol.x[2 * i]) < 1e-4);
}

TEST_CASE("logarithm against an upper budget") {
  // max u  s.t.  (u, 1, w) in Kexp, w <= 1/2  ->  u = log(1/2)
  ExpConeProgram prog;
  prog.num_vars = 2;  // (u, w)
  prog.c = {-1.0, 0.0};
  add(prog.g_entries, 0, 1, 1.0);  // w <= 1/2
  prog.h = {0.5, 0.0, 1.0, 0.0};
  add(prog.g_entries, 1, 0, -1.0);
  add(prog.g_entries, 3, 1, -1.0);
  prog.cone.nonneg = 1;
  prog.cone.exp_triples = 1;

  NumericSolution sol = solve_exp_cone(prog, kTol);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(std::log(0.5)).epsilon(1e-6));
}

TEST_CASE("infeasible box is flagged") {
  // x <= -1 and x >= 1 cannot hold together
  ExpConeProgram prog;
  prog.num_vars = 1;
  prog.c = {0.0};
  add(prog.g_entries, 0, 0, 1.0);
  add(prog.g_entries, 1, 0, -1.0);
  prog.h = {-1.0, -1.0};
  prog.cone.nonneg = 2;

  NumericSolution sol = solve_exp_cone(prog, kTol);
  CHECK(sol.status == SolveStatus::PrimalInfeasible);
}

TEST_CASE("unbounded objective is flagged as dual infeasible") {
  // min -x  s.t.  x >= 0
  ExpConeProgram prog;
  prog.num_vars = 1;
  prog.c = {-1.0};
  add(prog.g_entries, 0, 0, -1.0);
  prog.h = {0.0};
  prog.cone.nonneg = 1;

  NumericSolution sol = solve_exp_cone(prog, kTol);
  CHECK(sol.status == SolveStatus::DualInfeasible);
}

TEST_CASE("status strings") {
  CHECK(to_string(SolveStatus::Optimal) == "optimal");
  CHECK(to_string(SolveStatus::PrimalInfeasible) == "primal_infeasible");
  CHECK(to_string(SolveStatus::DualInfeasible) == "dual_infeasible");
  CHECK(to_string(SolveStatus::Stalled) == "stalled");
  CHECK(to_string(SolveStatus::IterationLimit) == "iteration_limit");
}

TEST_CASE("badly scaled coefficients still close the gap") {
  // min 300 w1 + w2  s.t.  (u, 1, w1), (-u, 1, w2) in Kexp, u free
  // value: min_u 300 e^u + e^{-u} = 2 sqrt(300) at e^u = 1/sqrt(300)
  ExpConeProgram prog;
  prog.num_vars = 3;  // (u, w1, w2)
  prog.c = {0.0, 300.0, 1.0};
  prog.h.assign(6, 0.0);
  add(prog.g_entries, 0, 0, -1.0);
  prog.h[1] = 1.0;
  add(prog.g_entries, 2, 1, -1.0);
  add(prog.g_entries, 3, 0, 1.0);
  prog.h[4] = 1.0;
  add(prog.g_entries, 5, 2, -1.0);
  prog.cone.exp_triples = 2;

  NumericSolution sol = solve_exp_cone(prog, kTol);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.primal_objective ==
        doctest::Approx(2 * std::sqrt(300.0)).epsilon(1e-6));
  CHECK(sol.relative_gap <= kTol);
}
