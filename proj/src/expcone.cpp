#include "certify/expcone.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace certify {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::PrimalInfeasible: return "primal_infeasible";
    case SolveStatus::DualInfeasible: return "dual_infeasible";
    case SolveStatus::Stalled: return "stalled";
    case SolveStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;
using Vec = Eigen::VectorXd;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

constexpr double kEta = 0.8;       // recenter when proximity exceeds this
constexpr double kEtaOuter = 20.0;  // hard cap on post-predictor proximity
constexpr double kFrac = 0.98;      // fraction to the boundary
constexpr double kAlphaFloor = 1e-7;  // smallest accepted line-search step
constexpr double kBacktrack = 0.8;

// Barrier of the exponential cone at (u, v, w), psi = v log(w/v) - u:
//   F = -log(psi) - log v - log w,  nu = 3.
struct ExpBarrier {
  Vec3 grad;
  Mat3 hess;
};

bool exp_primal_interior(double u, double v, double w) {
  return v > 0 && w > 0 && v * std::log(w / v) - u > 0;
}

bool exp_dual_interior(double u, double v, double w) {
  return u < 0 && w > 0 && v - u + u * std::log(-u / w) > 0;
}

ExpBarrier exp_barrier(double u, double v, double w) {
  const double lwv = std::log(w / v);
  const double psi = v * lwv - u;
  Vec3 dpsi(-1.0, lwv - 1.0, v / w);
  ExpBarrier out;
  out.grad = -dpsi / psi;
  out.grad(1) -= 1.0 / v;
  out.grad(2) -= 1.0 / w;
  Mat3 d2psi = Mat3::Zero();
  d2psi(1, 1) = -1.0 / v;
  d2psi(1, 2) = d2psi(2, 1) = 1.0 / w;
  d2psi(2, 2) = -v / (w * w);
  out.hess = dpsi * dpsi.transpose() / (psi * psi) - d2psi / psi;
  out.hess(1, 1) += 1.0 / (v * v);
  out.hess(2, 2) += 1.0 / (w * w);
  return out;
}

// Closed-form inverse Hessian. Unlike the Hessian itself (entries of order
// 1/psi^2 near the boundary), the inverse has entries of order |s|^2, so
// assembling it directly keeps the KKT solve backward stable; the (0,0)
// entry is arranged as a sum of nonnegative terms.
Mat3 exp_hess_inverse(double u, double v, double w) {
  const double l = std::log(w / v);
  const double r = v * l - u;  // psi > 0 in the interior
  const double denom = r + 2.0 * v;
  Mat3 out;
  const double lm1 = l - 1.0;
  out(0, 0) = (r * r * r + 2.0 * r * r * v + r * v * v * (lm1 * lm1 + 1.0) +
               v * v * v * l * l) /
              denom;
  out(0, 1) = out(1, 0) = v * v * ((r + v) * l - r) / denom;
  out(0, 2) = out(2, 0) = v * w * (r + v * l) / denom;
  out(1, 1) = v * v * (r + v) / denom;
  out(1, 2) = out(2, 1) = v * v * w / denom;
  out(2, 2) = w * w * (r + v) / denom;
  return out;
}

struct Point {
  Vec x, y, z, s;
  double tau = 1, kappa = 1;
};

bool cone_interior(const Vec& s, const Vec& z, int l, int q) {
  for (int i = 0; i < l; ++i)
    if (s(i) <= 0 || z(i) <= 0) return false;
  for (int k = 0; k < q; ++k) {
    int o = l + 3 * k;
    if (!exp_primal_interior(s(o), s(o + 1), s(o + 2))) return false;
    if (!exp_dual_interior(z(o), z(o + 1), z(o + 2))) return false;
  }
  return true;
}

// distance of (s, z, tau, kappa) from the central path at its own mu,
// measured in the local barrier metric
double proximity(const Point& pt, int l, int q, double nu) {
  const double mu = (pt.s.dot(pt.z) + pt.tau * pt.kappa) / nu;
  if (mu <= 0) return std::numeric_limits<double>::infinity();
  double acc = 0;
  for (int i = 0; i < l; ++i) {
    double t = pt.s(i) * pt.z(i) / mu - 1.0;
    acc += t * t;
  }
  for (int k = 0; k < q; ++k) {
    int o = l + 3 * k;
    ExpBarrier bar = exp_barrier(pt.s(o), pt.s(o + 1), pt.s(o + 2));
    Vec3 r(pt.z(o) + mu * bar.grad(0), pt.z(o + 1) + mu * bar.grad(1),
           pt.z(o + 2) + mu * bar.grad(2));
    Vec3 e = exp_hess_inverse(pt.s(o), pt.s(o + 1), pt.s(o + 2)) * r;
    acc += r.dot(e) / (mu * mu);
  }
  double t = pt.tau * pt.kappa / mu - 1.0;
  acc += t * t;
  return std::sqrt(acc);
}

struct Direction {
  Vec dx, dy, dz, ds;
  double dtau = 0, dkappa = 0;
};

}  // namespace

NumericSolution solve_exp_cone(const ExpConeProgram& prog, double tol, int max_iters) {
  const int nx = prog.num_vars;
  const int p = static_cast<int>(prog.b.size());
  const int m = prog.cone.dim();
  const int l = prog.cone.nonneg, q = prog.cone.exp_triples;
  if (static_cast<int>(prog.c.size()) != nx)
    throw std::invalid_argument("solve_exp_cone: objective size mismatch");
  if (static_cast<int>(prog.h.size()) != m)
    throw std::invalid_argument("solve_exp_cone: cone size mismatch");
  for (const auto& e : prog.a_entries)
    if (e.row < 0 || e.row >= p || e.col < 0 || e.col >= nx)
      throw std::invalid_argument("solve_exp_cone: A entry out of range");
  for (const auto& e : prog.g_entries)
    if (e.row < 0 || e.row >= m || e.col < 0 || e.col >= nx)
      throw std::invalid_argument("solve_exp_cone: G entry out of range");

  SpMat a(p, nx), g(m, nx);
  {
    std::vector<Triplet> ta, tg;
    ta.reserve(prog.a_entries.size());
    for (const auto& e : prog.a_entries) ta.emplace_back(e.row, e.col, e.value);
    a.setFromTriplets(ta.begin(), ta.end());
    tg.reserve(prog.g_entries.size());
    for (const auto& e : prog.g_entries) tg.emplace_back(e.row, e.col, e.value);
    g.setFromTriplets(tg.begin(), tg.end());
  }
  Vec c = Eigen::Map<const Vec>(prog.c.data(), nx);
  Vec b = Eigen::Map<const Vec>(prog.b.data(), p);
  Vec h = Eigen::Map<const Vec>(prog.h.data(), m);
  SpMat at = a.transpose(), gt = g.transpose();

  const double nu = l + 3 * q + 1;
  const double norm_bh = std::max(1.0, std::sqrt(b.squaredNorm() + h.squaredNorm()));
  const double norm_c = std::max(1.0, c.norm());

  Point pt;
  pt.x = Vec::Zero(nx);
  pt.y = Vec::Zero(p);
  pt.s = Vec::Ones(m);
  pt.z = Vec::Ones(m);
  // the unit point of the exponential cone: -grad maps it to itself, so
  // s = z there sits exactly on the central path with mu = 1
  const Vec3 unit_exp(-0.8278383990656786, 0.8051020015847954, 1.2909277098569580);
  for (int k = 0; k < q; ++k)
    for (int j = 0; j < 3; ++j) pt.s(l + 3 * k + j) = pt.z(l + 3 * k + j) = unit_exp(j);
  pt.tau = pt.kappa = 1;

  NumericSolution best;
  best.status = SolveStatus::Stalled;
  double best_score = std::numeric_limits<double>::infinity();
  int stall_count = 0;

  const int dim = nx + p + m;
  Eigen::SparseLU<SpMat> lu;

  auto record = [&](SolveStatus st, int iter, double pres, double dres, double gap,
                    double pcost, double dcost) {
    NumericSolution out;
    out.status = st;
    out.iterations = iter;
    out.primal_residual = pres;
    out.dual_residual = dres;
    out.relative_gap = gap;
    out.primal_objective = pcost;
    out.dual_objective = dcost;
    out.x.assign(pt.x.data(), pt.x.data() + nx);
    out.y.assign(pt.y.data(), pt.y.data() + p);
    out.z.assign(pt.z.data(), pt.z.data() + m);
    out.s.assign(pt.s.data(), pt.s.data() + m);
    for (auto& v : out.x) v /= pt.tau;
    for (auto& v : out.y) v /= pt.tau;
    for (auto& v : out.z) v /= pt.tau;
    for (auto& v : out.s) v /= pt.tau;
    return out;
  };

  const bool trace = std::getenv("CONE_TRACE") != nullptr;
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    Vec rx = at * pt.y + gt * pt.z + c * pt.tau;
    Vec ry = a * pt.x - b * pt.tau;
    Vec rz = g * pt.x + pt.s - h * pt.tau;
    double rtau = c.dot(pt.x) + b.dot(pt.y) + h.dot(pt.z) + pt.kappa;
    double mu = (pt.s.dot(pt.z) + pt.tau * pt.kappa) / nu;

    double pcost = c.dot(pt.x) / pt.tau;
    double dcost = -(b.dot(pt.y) + h.dot(pt.z)) / pt.tau;
    double pres = std::sqrt(ry.squaredNorm() + rz.squaredNorm()) / pt.tau / norm_bh;
    double dres = rx.norm() / pt.tau / norm_c;
    double gap = std::fabs(pcost - dcost) /
                 std::max({1.0, std::fabs(pcost), std::fabs(dcost)});
    double score = std::max({pres, dres, gap});
    if (score < best_score) {
      best_score = score;
      best = record(SolveStatus::Stalled, iter, pres, dres, gap, pcost, dcost);
    }
    if (pres <= tol && dres <= tol && gap <= tol)
      return record(SolveStatus::Optimal, iter, pres, dres, gap, pcost, dcost);

    // Farkas-type certificates from the homogeneous model
    double denom_p = -(b.dot(pt.y) + h.dot(pt.z));
    if (denom_p > 0 && pt.tau < 1e-2) {
      double certres = (at * pt.y + gt * pt.z).norm() / denom_p;
      if (certres <= tol)
        return record(SolveStatus::PrimalInfeasible, iter, pres, dres, gap, pcost, dcost);
    }
    double denom_d = -c.dot(pt.x);
    if (denom_d > 0 && pt.tau < 1e-2) {
      double certres =
          std::sqrt((a * pt.x).squaredNorm() + (g * pt.x + pt.s).squaredNorm()) / denom_d;
      if (certres <= tol)
        return record(SolveStatus::DualInfeasible, iter, pres, dres, gap, pcost, dcost);
    }

    // barrier data and scaled inverse Hessian blocks (mu H)^-1
    std::vector<ExpBarrier> bars(q);
    for (int k = 0; k < q; ++k) {
      int o = l + 3 * k;
      bars[k] = exp_barrier(pt.s(o), pt.s(o + 1), pt.s(o + 2));
    }
    Vec grad_full = Vec::Zero(m);
    for (int i = 0; i < l; ++i) grad_full(i) = -1.0 / pt.s(i);
    for (int k = 0; k < q; ++k)
      for (int j = 0; j < 3; ++j) grad_full(l + 3 * k + j) = bars[k].grad(j);
    std::vector<Mat3> hinv_scaled(q);
    for (int k = 0; k < q; ++k) {
      int o = l + 3 * k;
      hinv_scaled[k] = exp_hess_inverse(pt.s(o), pt.s(o + 1), pt.s(o + 2)) / mu;
    }

    auto apply_hinv_scaled = [&](const Vec& v) {
      Vec out(m);
      for (int i = 0; i < l; ++i) out(i) = v(i) * pt.s(i) * pt.s(i) / mu;
      for (int k = 0; k < q; ++k) {
        int o = l + 3 * k;
        Vec3 w(v(o), v(o + 1), v(o + 2));
        Vec3 r = hinv_scaled[k] * w;
        out(o) = r(0);
        out(o + 1) = r(1);
        out(o + 2) = r(2);
      }
      return out;
    };

    // assemble M = [[0 A' G'], [A 0 0], [G 0 -(mu H)^-1]]
    std::vector<Triplet> trips;
    trips.reserve(2 * (prog.a_entries.size() + prog.g_entries.size()) + l + 9 * q);
    for (const auto& e : prog.a_entries) {
      trips.emplace_back(nx + e.row, e.col, e.value);
      trips.emplace_back(e.col, nx + e.row, e.value);
    }
    for (const auto& e : prog.g_entries) {
      trips.emplace_back(nx + p + e.row, e.col, e.value);
      trips.emplace_back(e.col, nx + p + e.row, e.value);
    }
    for (int i = 0; i < l; ++i)
      trips.emplace_back(nx + p + i, nx + p + i, -pt.s(i) * pt.s(i) / mu);
    for (int k = 0; k < q; ++k) {
      int o = nx + p + l + 3 * k;
      for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col)
          trips.emplace_back(o + r, o + col, -hinv_scaled[k](r, col));
    }
    SpMat msys(dim, dim);
    msys.setFromTriplets(trips.begin(), trips.end());

    double reg = 0;
    lu.compute(msys);
    while (lu.info() != Eigen::Success) {
      reg = reg == 0 ? 1e-10 : reg * 100;
      if (reg > 1e-4) return best;  // hopeless factorization
      std::vector<Triplet> rtrips = trips;
      for (int i = 0; i < nx; ++i) rtrips.emplace_back(i, i, reg);
      for (int i = nx; i < dim; ++i) rtrips.emplace_back(i, i, -reg);
      SpMat mreg(dim, dim);
      mreg.setFromTriplets(rtrips.begin(), rtrips.end());
      lu.compute(mreg);
    }
    auto solve_refined = [&](const Vec& rhs) {
      Vec sol = lu.solve(rhs);
      for (int r = 0; r < 2; ++r) {
        Vec resid = rhs - msys * sol;
        sol += lu.solve(resid);
      }
      return sol;
    };

    Vec r2(dim);
    r2 << -c, b, h;
    Vec v2 = solve_refined(r2);
    double qv2 = c.dot(v2.head(nx)) + b.dot(v2.segment(nx, p)) + h.dot(v2.tail(m));

    auto make_direction = [&](double sigma) -> Direction {
      Vec r1(dim);
      Vec rhs_cone = apply_hinv_scaled(pt.z + sigma * mu * grad_full);
      r1 << -(1 - sigma) * rx, -(1 - sigma) * ry, -(1 - sigma) * rz + rhs_cone;
      Vec v1 = solve_refined(r1);
      double qv1 = c.dot(v1.head(nx)) + b.dot(v1.segment(nx, p)) + h.dot(v1.tail(m));
      double rhs_t = -(1 - sigma) * rtau + pt.kappa - sigma * mu / pt.tau;
      double denom = qv2 - pt.kappa / pt.tau;
      Direction d;
      if (std::fabs(denom) < 1e-300) denom = -1e-300;
      d.dtau = (rhs_t - qv1) / denom;
      Vec xi = v1 + d.dtau * v2;
      d.dx = xi.head(nx);
      d.dy = xi.segment(nx, p);
      d.dz = xi.tail(m);
      d.ds = -apply_hinv_scaled(pt.z + sigma * mu * grad_full + d.dz);
      d.dkappa = -pt.kappa + sigma * mu / pt.tau - pt.kappa / pt.tau * d.dtau;
      return d;
    };

    auto trial_point = [&](const Direction& d, double alpha) {
      Point t;
      t.x = pt.x + alpha * d.dx;
      t.y = pt.y + alpha * d.dy;
      t.z = pt.z + alpha * d.dz;
      t.s = pt.s + alpha * d.ds;
      t.tau = pt.tau + alpha * d.dtau;
      t.kappa = pt.kappa + alpha * d.dkappa;
      return t;
    };
    auto interior = [&](const Point& t) {
      return t.tau > 0 && t.kappa > 0 && cone_interior(t.s, t.z, l, q);
    };

    const double prox_now = proximity(pt, l, q, nu);
    if (prox_now > kEta) {
      // corrector: pure centering with a strict-decrease line search
      Direction dir = make_direction(1.0);
      double alpha = 1.0;
      bool moved = false;
      while (alpha >= kAlphaFloor) {
        Point t = trial_point(dir, alpha);
        if (interior(t) && proximity(t, l, q, nu) < prox_now * (1.0 - 0.01 * alpha)) {
          pt = t;
          moved = true;
          break;
        }
        alpha *= kBacktrack;
      }
      if (trace)
        std::fprintf(stderr, "it=%d mu=%.3e center prox=%.3e alpha=%.3e moved=%d\n", iter,
                     mu, prox_now, alpha, moved ? 1 : 0);
      if (!moved && ++stall_count >= 3) break;
      if (moved) stall_count = 0;
      continue;
    }

    // predictor: Mehrotra-style combined step, fraction to the boundary
    Direction aff = make_direction(0.0);
    double alpha_aff = 1.0;
    while (alpha_aff >= kAlphaFloor && !interior(trial_point(aff, alpha_aff)))
      alpha_aff *= kBacktrack;
    if (alpha_aff < kAlphaFloor) alpha_aff = 0;
    double sigma = std::clamp(std::pow(1.0 - alpha_aff, 3.0), 1e-4, 0.9999);

    Direction dir = make_direction(sigma);
    double amax = 1.0;
    while (amax >= kAlphaFloor) {
      Point t = trial_point(dir, kFrac * amax);
      if (interior(t) && proximity(t, l, q, nu) <= kEtaOuter) break;
      amax *= kBacktrack;
    }
    if (trace)
      std::fprintf(stderr,
                   "it=%d mu=%.3e tau=%.3e pres=%.3e dres=%.3e gap=%.3e a_aff=%.3e "
                   "sigma=%.3e amax=%.3e prox=%.3e\n",
                   iter, mu, pt.tau, pres, dres, gap, alpha_aff, sigma, amax, prox_now);
    if (amax < kAlphaFloor) {
      if (++stall_count >= 3) break;
      continue;
    }
    pt = trial_point(dir, kFrac * amax);
    stall_count = 0;
  }

  if (iter >= max_iters && best.status == SolveStatus::Stalled)
    best.status = SolveStatus::IterationLimit;
  best.iterations = iter;
  return best;
}

}  // namespace certify
