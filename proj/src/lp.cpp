#include "certify/lp.hpp"

#include <cassert>
#include <stdexcept>

namespace certify {

void LinearProgram::add_row(RationalVector coeffs, Rel rel, Rational rhs) {
  if (static_cast<int>(coeffs.size()) != num_vars)
    throw std::invalid_argument("LinearProgram::add_row: coefficient count mismatch");
  rows.push_back(Row{std::move(coeffs), rel, std::move(rhs)});
}

namespace {

enum class VarState { AtLower, AtUpper, Free };

struct Tableau {
  int m = 0;        // rows
  int n_real = 0;   // structural + slack columns
  int n_total = 0;  // plus artificials
  RationalMatrix t;
  std::vector<int> basis;          // size m, variable basic in each row
  std::vector<bool> is_basic;      // size n_total
  std::vector<VarState> state;     // nonbasic position
  RationalVector value;            // size n_total, kept consistent with A x = b
  std::vector<std::optional<Rational>> lo, up;
};

enum class CoreStatus { Optimal, Unbounded };

void pivot(Tableau& tb, int row, int col) {
  Rational p = tb.t.at(row, col);
  assert(p != 0);
  for (int j = 0; j < tb.n_total; ++j) tb.t.at(row, j) /= p;
  for (int i = 0; i < tb.m; ++i) {
    if (i == row) continue;
    Rational f = tb.t.at(i, col);
    if (f == 0) continue;
    for (int j = 0; j < tb.n_total; ++j)
      if (tb.t.at(row, j) != 0) tb.t.at(i, j) -= f * tb.t.at(row, j);
  }
}

// Bland's rule on the combined entering/leaving choice: smallest eligible
// variable index enters, and among the tight ratio-test candidates the
// smallest variable index leaves (a bound flip counts as the entering
// variable itself). This terminates on degenerate problems.
CoreStatus run_simplex(Tableau& tb, const RationalVector& cost,
                       const std::vector<bool>& may_enter) {
  for (;;) {
    // reduced costs d_j = c_j - c_B . T(:,j), evaluated lazily per column
    RationalVector cb(tb.m);
    bool any_cb = false;
    for (int i = 0; i < tb.m; ++i) {
      cb[i] = cost[tb.basis[i]];
      if (cb[i] != 0) any_cb = true;
    }
    int enter = -1, dir = 0;
    for (int j = 0; j < tb.n_total && enter < 0; ++j) {
      if (tb.is_basic[j] || !may_enter[j]) continue;
      Rational d = cost[j];
      if (any_cb)
        for (int i = 0; i < tb.m; ++i)
          if (cb[i] != 0 && tb.t.at(i, j) != 0) d -= cb[i] * tb.t.at(i, j);
      if (d < 0 && (tb.state[j] == VarState::AtLower || tb.state[j] == VarState::Free)) {
        enter = j;
        dir = 1;
      } else if (d > 0 &&
                 (tb.state[j] == VarState::AtUpper || tb.state[j] == VarState::Free)) {
        enter = j;
        dir = -1;
      }
    }
    if (enter < 0) return CoreStatus::Optimal;

    // ratio test
    bool have_cap = false;
    Rational cap;
    int leave_var = -1, leave_row = -1;  // row -1 encodes a bound flip
    auto offer = [&](const Rational& c, int var, int row) {
      if (!have_cap || c < cap || (c == cap && var < leave_var)) {
        have_cap = true;
        cap = c;
        leave_var = var;
        leave_row = row;
      }
    };
    if (tb.state[enter] == VarState::AtLower && tb.up[enter])
      offer(*tb.up[enter] - *tb.lo[enter], enter, -1);
    if (tb.state[enter] == VarState::AtUpper && tb.lo[enter])
      offer(*tb.up[enter] - *tb.lo[enter], enter, -1);
    for (int i = 0; i < tb.m; ++i) {
      Rational w = Rational(dir) * tb.t.at(i, enter);
      if (w == 0) continue;
      int bv = tb.basis[i];
      if (w > 0) {
        if (tb.lo[bv]) offer((tb.value[bv] - *tb.lo[bv]) / w, bv, i);
      } else {
        if (tb.up[bv]) offer((*tb.up[bv] - tb.value[bv]) / (-w), bv, i);
      }
    }
    if (!have_cap) return CoreStatus::Unbounded;
    assert(cap >= 0);

    // take the step
    Rational step = Rational(dir) * cap;
    tb.value[enter] += step;
    if (step != 0)
      for (int i = 0; i < tb.m; ++i)
        if (tb.t.at(i, enter) != 0) tb.value[tb.basis[i]] -= step * tb.t.at(i, enter);
    if (leave_row < 0) {
      tb.state[enter] =
          tb.state[enter] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
    } else {
      Rational w = Rational(dir) * tb.t.at(leave_row, enter);
      tb.state[leave_var] = w > 0 ? VarState::AtLower : VarState::AtUpper;
      tb.is_basic[leave_var] = false;
      tb.is_basic[enter] = true;
      tb.basis[leave_row] = enter;
      pivot(tb, leave_row, enter);
    }
  }
}

}  // namespace

LpResult solve_lp_exact(const LinearProgram& lp) {
  const int n = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());
  for (int j = 0; j < n; ++j)
    if (lp.lower[j] && lp.upper[j] && *lp.lower[j] > *lp.upper[j])
      return LpResult{LpStatus::Infeasible, {}, {}};

  int n_slack = 0;
  for (const auto& row : lp.rows)
    if (row.rel != Rel::Eq) ++n_slack;
  Tableau tb;
  tb.m = m;
  tb.n_real = n + n_slack;
  tb.n_total = tb.n_real + m;
  tb.t = RationalMatrix(m, tb.n_total);
  tb.basis.assign(m, -1);
  tb.is_basic.assign(tb.n_total, false);
  tb.state.assign(tb.n_total, VarState::AtLower);
  tb.value.assign(tb.n_total, Rational(0));
  tb.lo.assign(tb.n_total, Rational(0));
  tb.up.assign(tb.n_total, std::nullopt);

  for (int j = 0; j < n; ++j) {
    tb.lo[j] = lp.lower[j];
    tb.up[j] = lp.upper[j];
    if (tb.lo[j]) {
      tb.value[j] = *tb.lo[j];
      tb.state[j] = VarState::AtLower;
    } else if (tb.up[j]) {
      tb.value[j] = *tb.up[j];
      tb.state[j] = VarState::AtUpper;
    } else {
      tb.state[j] = VarState::Free;
    }
  }

  // rows: a . x (+|-) slack = rhs, then one artificial per row carrying the
  // initial residual with a +1 coefficient after sign normalization
  RationalMatrix a(m, tb.n_real);
  RationalVector rhs(m);
  int slack = n;
  for (int i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    for (int j = 0; j < n; ++j) a.at(i, j) = row.coeffs[j];
    if (row.rel == Rel::Le)
      a.at(i, slack++) = 1;
    else if (row.rel == Rel::Ge)
      a.at(i, slack++) = -1;
    rhs[i] = row.rhs;
  }
  for (int i = 0; i < m; ++i) {
    Rational resid = rhs[i];
    for (int j = 0; j < tb.n_real; ++j)
      if (a.at(i, j) != 0 && tb.value[j] != 0) resid -= a.at(i, j) * tb.value[j];
    int sign = resid >= 0 ? 1 : -1;
    for (int j = 0; j < tb.n_real; ++j) tb.t.at(i, j) = Rational(sign) * a.at(i, j);
    int art = tb.n_real + i;
    tb.t.at(i, art) = 1;
    tb.value[art] = Rational(sign) * resid;
    tb.basis[i] = art;
    tb.is_basic[art] = true;
  }

  // phase one: minimize the artificial mass
  RationalVector cost1(tb.n_total);
  for (int i = 0; i < m; ++i) cost1[tb.n_real + i] = 1;
  std::vector<bool> enter_all(tb.n_total, true);
  CoreStatus st = run_simplex(tb, cost1, enter_all);
  assert(st == CoreStatus::Optimal);  // phase one is bounded below by zero
  Rational art_mass;
  for (int i = 0; i < m; ++i) art_mass += tb.value[tb.n_real + i];
  if (art_mass != 0) return LpResult{LpStatus::Infeasible, {}, {}};

  // drive basic artificials out where possible; rows that resist are
  // redundant and their artificial stays pinned at zero
  for (int i = 0; i < m; ++i) {
    if (tb.basis[i] < tb.n_real) continue;
    for (int j = 0; j < tb.n_real; ++j) {
      if (tb.is_basic[j] || tb.t.at(i, j) == 0) continue;
      int art = tb.basis[i];
      tb.state[art] = VarState::AtLower;
      tb.is_basic[art] = false;
      tb.is_basic[j] = true;
      tb.basis[i] = j;
      pivot(tb, i, j);
      break;
    }
  }

  // phase two on the real objective, artificials locked out
  RationalVector cost2(tb.n_total);
  for (int j = 0; j < n; ++j)
    cost2[j] = lp.maximize ? -lp.objective[j] : lp.objective[j];
  std::vector<bool> enter_real(tb.n_total, false);
  for (int j = 0; j < tb.n_real; ++j) enter_real[j] = true;
  st = run_simplex(tb, cost2, enter_real);
  if (st == CoreStatus::Unbounded) return LpResult{LpStatus::Unbounded, {}, {}};

  LpResult res;
  res.status = LpStatus::Optimal;
  res.x.assign(tb.value.begin(), tb.value.begin() + n);
  Rational obj;
  for (int j = 0; j < n; ++j)
    if (lp.objective[j] != 0 && res.x[j] != 0) obj += lp.objective[j] * res.x[j];
  res.objective_value = obj;
  return res;
}

}  // namespace certify
