#pragma once

#include <optional>
#include <vector>

#include "certify/matq.hpp"
#include "certify/rational.hpp"

namespace certify {

enum class Rel { Le, Eq, Ge };

enum class LpStatus { Optimal, Infeasible, Unbounded };

// General-form linear program over the rationals.
//
// Variables default to lower bound 0 and no upper bound; set lower[i] to
// nullopt for a free variable. Rows are a coeffs . x (<= | = | >=) rhs.
struct LinearProgram {
  int num_vars = 0;
  bool maximize = false;
  RationalVector objective;

  struct Row {
    RationalVector coeffs;
    Rel rel = Rel::Eq;
    Rational rhs;
  };
  std::vector<Row> rows;

  std::vector<std::optional<Rational>> lower, upper;

  explicit LinearProgram(int nvars)
      : num_vars(nvars),
        objective(nvars),
        lower(nvars, Rational(0)),
        upper(nvars, std::nullopt) {}

  void add_row(RationalVector coeffs, Rel rel, Rational rhs);
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RationalVector x;           // only for Optimal
  Rational objective_value;   // only for Optimal
};

// Exact two-phase simplex on bounded variables, Bland's rule throughout
// (deterministic and cycle-free). Inequalities get one slack each instead of
// a split into standard form, so the tableau stays narrow.
LpResult solve_lp_exact(const LinearProgram& lp);

}  // namespace certify
