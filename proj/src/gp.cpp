#include "certify/gp.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace certify {

namespace {

struct SlotRef {
  int cover = 0, entry = 0;
};

}  // namespace

GpSolution solve_gp(const SparsePolynomial& p, const SupportPartition& part,
                    const std::vector<Cover>& covers, GpMode mode, double tol) {
  if (!part.has_constant)
    throw std::invalid_argument("solve_gp: support needs a positive constant term");

  // The masses and the bound are 1-homogeneous in the coefficients (in log
  // form the shift is consistent because each cover's weights sum to one), so
  // normalize by the largest magnitude and scale the answers back afterwards.
  Rational gamma = 1;
  for (const auto& cf : p.coeffs) {
    Rational a = rational_abs(cf);
    if (a > gamma) gamma = a;
  }
  SparsePolynomial ps = p;
  for (auto& cf : ps.coeffs) cf /= gamma;
  const double gamma_d = rational_to_double(gamma);

  // slot = one (cover, inner-term) pair
  std::vector<SlotRef> slots;
  std::vector<std::vector<int>> slot_of(covers.size());
  for (size_t ci = 0; ci < covers.size(); ++ci) {
    slot_of[ci].resize(covers[ci].entries.size());
    for (size_t ei = 0; ei < covers[ci].entries.size(); ++ei) {
      slot_of[ci][ei] = static_cast<int>(slots.size());
      slots.push_back(SlotRef{static_cast<int>(ci), static_cast<int>(ei)});
    }
  }
  const int ns = static_cast<int>(slots.size());

  // per-support-term budget rows, constant term excluded (the bound pays it)
  std::map<int, std::vector<int>> budget;  // support index -> slots
  for (int k = 0; k < ns; ++k) {
    const CoverEntry& e = covers[slots[k].cover].entries[slots[k].entry];
    if (e.support_index != part.constant_index) budget[e.support_index].push_back(k);
  }

  ExpConeProgram prog;
  prog.num_vars = 2 * ns;  // per slot: (u, t) in log mode, (v, X) in direct
  prog.c.assign(prog.num_vars, 0.0);
  auto primary = [&](int k) { return 2 * k; };    // u or v
  auto secondary = [&](int k) { return 2 * k + 1; };  // t or X
  for (int k = 0; k < ns; ++k) {
    const CoverEntry& e = covers[slots[k].cover].entries[slots[k].entry];
    if (e.support_index == part.constant_index) prog.c[secondary(k)] = 1.0;
  }

  const int nb = static_cast<int>(budget.size());
  std::vector<double> lam(ns);
  for (int k = 0; k < ns; ++k)
    lam[k] = rational_to_double(covers[slots[k].cover].entries[slots[k].entry].lambda);

  if (mode == GpMode::LogDomain) {
    // A: one circuit equation per cover
    prog.b.resize(covers.size());
    for (size_t ci = 0; ci < covers.size(); ++ci) {
      double rhs = std::log(std::fabs(rational_to_double(ps.coeffs[covers[ci].beta_index])));
      for (size_t ei = 0; ei < covers[ci].entries.size(); ++ei) {
        double lv = rational_to_double(covers[ci].entries[ei].lambda);
        rhs += lv * std::log(lv);
        prog.a_entries.push_back(
            SparseEntry{static_cast<int>(ci), primary(slot_of[ci][ei]), lv});
      }
      prog.b[ci] = rhs;
    }
    // G: budget rows then (u, 1, t) triples
    prog.cone.nonneg = nb;
    prog.cone.exp_triples = ns;
    prog.h.assign(nb + 3 * ns, 0.0);
    int row = 0;
    for (const auto& [sup, ks] : budget) {
      for (int k : ks) prog.g_entries.push_back(SparseEntry{row, secondary(k), 1.0});
      prog.h[row] = rational_to_double(ps.coeffs[sup]);
      ++row;
    }
    for (int k = 0; k < ns; ++k) {
      int o = nb + 3 * k;
      prog.g_entries.push_back(SparseEntry{o, primary(k), -1.0});
      prog.h[o + 1] = 1.0;
      prog.g_entries.push_back(SparseEntry{o + 2, secondary(k), -1.0});
    }
  } else {
    // direct form: v <= log(X / lambda) through (v, 1, X/lambda) triples
    prog.cone.nonneg = nb + static_cast<int>(covers.size());
    prog.cone.exp_triples = ns;
    prog.h.assign(prog.cone.dim(), 0.0);
    int row = 0;
    for (const auto& [sup, ks] : budget) {
      for (int k : ks) prog.g_entries.push_back(SparseEntry{row, secondary(k), 1.0});
      prog.h[row] = rational_to_double(ps.coeffs[sup]);
      ++row;
    }
    for (size_t ci = 0; ci < covers.size(); ++ci) {
      for (size_t ei = 0; ei < covers[ci].entries.size(); ++ei)
        prog.g_entries.push_back(
            SparseEntry{row, primary(slot_of[ci][ei]), -lam[slot_of[ci][ei]]});
      prog.h[row] =
          -std::log(std::fabs(rational_to_double(ps.coeffs[covers[ci].beta_index])));
      ++row;
    }
    for (int k = 0; k < ns; ++k) {
      int o = prog.cone.nonneg + 3 * k;
      prog.g_entries.push_back(SparseEntry{o, primary(k), -1.0});
      prog.h[o + 1] = 1.0;
      prog.g_entries.push_back(SparseEntry{o + 2, secondary(k), -1.0 / lam[k]});
    }
  }

  GpSolution out;
  out.raw = solve_exp_cone(prog, tol);
  out.status = out.raw.status;
  out.x_tilde.resize(covers.size());
  for (size_t ci = 0; ci < covers.size(); ++ci)
    out.x_tilde[ci].assign(covers[ci].entries.size(), 0.0);
  if (out.status != SolveStatus::Optimal) return out;

  for (int k = 0; k < ns; ++k) {
    double v;
    if (mode == GpMode::LogDomain)
      v = std::exp(out.raw.x[primary(k)]);
    else
      v = std::max(out.raw.x[secondary(k)], 0.0);
    out.x_tilde[slots[k].cover][slots[k].entry] = gamma_d * v;
  }
  double mass = 0;
  for (int k = 0; k < ns; ++k) {
    const CoverEntry& e = covers[slots[k].cover].entries[slots[k].entry];
    if (e.support_index == part.constant_index)
      mass += out.x_tilde[slots[k].cover][slots[k].entry];
  }
  out.bound = gamma_d * rational_to_double(ps.coeffs[part.constant_index]) - mass;
  return out;
}

}  // namespace certify
