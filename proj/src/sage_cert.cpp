#include "certify/sage_cert.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "certify/enclosure.hpp"
#include "certify/lp.hpp"

namespace certify {

int constant_term_index(const SparsePolynomial& f) {
  for (int i = 0; i < f.term_count(); ++i) {
    bool zero = true;
    for (int e : f.exponents[i]) zero = zero && e == 0;
    if (zero) return i;
  }
  return -1;
}

namespace {

struct RoundContext {
  RationalMatrix qind;  // independent rows of the balance matrix
  RationalMatrix proj;  // exact projector onto its kernel
};

RoundContext make_round_context(const SparsePolynomial& f) {
  RoundContext ctx;
  RationalMatrix q = age_constraint_matrix(f);
  RationalMatrix qt = transpose(q);
  std::vector<int> rows = rref(qt);  // independent rows of q
  ctx.qind = RationalMatrix(static_cast<int>(rows.size()), q.cols);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int j = 0; j < q.cols; ++j) ctx.qind.at(static_cast<int>(r), j) = q.at(rows[r], j);
  RationalMatrix pinv = pseudo_inverse_exact(q);
  RationalMatrix pq = matmul(pinv, q);
  ctx.proj = RationalMatrix::identity(q.cols);
  for (int i = 0; i < q.cols; ++i)
    for (int j = 0; j < q.cols; ++j) ctx.proj.at(i, j) -= pq.at(i, j);
  return ctx;
}

// Rationalize, project exactly onto the kernel, then repair signs inside a
// band around the projected point with an exact feasibility program.
// pin_index (if >= 0) is additionally forced up to delta.
std::optional<RationalVector> round_nu(const RoundContext& ctx,
                                       const std::vector<double>& nu_hat, int anchor,
                                       int pin_index, const Rational& delta) {
  const int t = ctx.proj.rows;
  RationalVector raw(t);
  // simplify inside a quarter band first so clean targets survive the
  // exact projection unchanged
  for (int i = 0; i < t; ++i)
    raw[i] = round_rational(rational_from_double(nu_hat[i]), delta / 4);
  RationalVector tilde = matvec(ctx.proj, raw);

  auto valid = [&](const RationalVector& v) {
    for (int i = 0; i < t; ++i) {
      if (i == anchor) continue;
      if (v[i] < 0) return false;
      if (i == pin_index && v[i] < delta) return false;
    }
    return true;
  };
  if (valid(tilde)) return tilde;

  // repair bands follow the block magnitude (power of two keeps them simple)
  Rational scale(1);
  for (int i = 0; i < t; ++i)
    while (scale < rational_abs(tilde[i])) scale *= 2;

  for (int attempt = 0; attempt < 4; ++attempt) {
    Rational band = delta * scale * rational_pow_ui(Rational(2), attempt);
    LinearProgram lp(t);
    for (int i = 0; i < t; ++i) {
      Rational lo = tilde[i] - band, hi = tilde[i] + band;
      if (i != anchor) {
        if (lo < 0) lo = 0;
        if (i == pin_index && lo < delta) lo = delta;
      }
      lp.lower[i] = lo;
      lp.upper[i] = hi;
    }
    for (int r = 0; r < ctx.qind.rows; ++r) {
      RationalVector row(t);
      for (int j = 0; j < t; ++j) row[j] = ctx.qind.at(r, j);
      lp.add_row(std::move(row), Rel::Eq, Rational(0));
    }
    LpResult res = solve_lp_exact(lp);
    if (res.status == LpStatus::Optimal) return res.x;
  }
  return std::nullopt;
}

// Round the off-anchor coefficients and couple every handled coordinate to
// its budget: negative coordinates are absorbed exactly by their anchor
// block, positive ones keep slack or get scaled back onto the budget.
// Coordinates equal to skip_index are left for the caller.
bool project_c(const SparsePolynomial& f, const std::vector<int>& anchors,
               const std::vector<std::vector<double>>& c_hat, const Rational& delta,
               int skip_index, std::vector<RationalVector>* c_out, std::string* why) {
  const int t = f.term_count();
  const int nb = static_cast<int>(anchors.size());
  c_out->assign(nb, RationalVector(t, Rational(0)));
  std::vector<int> block_of(t, -1);
  for (int k = 0; k < nb; ++k) block_of[anchors[k]] = k;

  for (int k = 0; k < nb; ++k)
    for (int i = 0; i < t; ++i) {
      if (i == anchors[k] || i == skip_index) continue;
      double v = std::max(c_hat[k][i], 0.0);
      (*c_out)[k][i] = round_rational(rational_from_double(v), delta);
      if ((*c_out)[k][i] < 0) (*c_out)[k][i] = 0;
    }
  for (int i = 0; i < t; ++i) {
    if (i == skip_index) continue;
    if (f.coeffs[i] < 0) {
      int k = block_of[i];
      if (k < 0) {
        *why = "negative term " + std::to_string(i) + " has no anchor block";
        return false;
      }
      Rational others(0);
      for (int k2 = 0; k2 < nb; ++k2)
        if (k2 != k) others += (*c_out)[k2][i];
      (*c_out)[k][i] = f.coeffs[i] - others;
    } else {
      Rational total(0);
      for (int k = 0; k < nb; ++k) total += (*c_out)[k][i];
      if (total > f.coeffs[i]) {
        Rational factor = f.coeffs[i] / total;
        for (int k = 0; k < nb; ++k) (*c_out)[k][i] *= factor;
      }
    }
  }
  return true;
}

// Smallest-denominator sound upper bound on the entropy value of one block.
Rational entropy_upper_bound(const RationalVector& nu, const RationalVector& c,
                             const Rational& delta) {
  for (int bits = 64; bits <= 8192; bits *= 2) {
    Enclosure e = entropy_enclosure(nu, c, bits);
    Rational pad = rational_abs(e.upper);
    if (pad < 1) pad = 1;
    pad *= delta;
    if (e.upper - e.lower > pad / 2) continue;
    // the simplest value in the whole enclosure is often an exact tie
    // (clean data); keep it whenever the exact check confirms it
    Rational cand = best_rational_in(e.lower, e.upper + pad);
    if (cand >= e.upper || check_entropy_leq(nu, c, cand) == CheckOutcome::Holds)
      return cand;
    return best_rational_in(e.upper, e.upper + pad);
  }
  throw std::runtime_error("entropy_upper_bound: enclosure failed to converge");
}

// entropy vectors restricted to the off-anchor coordinates
void block_entropy_vectors(const SageBlock& blk, RationalVector* nu,
                           RationalVector* c) {
  nu->clear();
  c->clear();
  for (size_t i = 0; i < blk.nu.size(); ++i) {
    if (static_cast<int>(i) == blk.anchor) continue;
    nu->push_back(blk.nu[i]);
    c->push_back(blk.c[i]);
  }
}

VerifyResult check_blocks(const SparsePolynomial& f,
                          const std::vector<SageBlock>& blocks) {
  const int t = f.term_count();
  RationalMatrix q = age_constraint_matrix(f);
  for (size_t k = 0; k < blocks.size(); ++k) {
    const SageBlock& blk = blocks[k];
    std::string tag = "block " + std::to_string(k) + ": ";
    if (blk.anchor < 0 || blk.anchor >= t) return {false, tag + "anchor out of range"};
    if (static_cast<int>(blk.nu.size()) != t || static_cast<int>(blk.c.size()) != t)
      return {false, tag + "inconsistent sizes"};
    for (int i = 0; i < t; ++i) {
      if (i == blk.anchor) continue;
      if (blk.nu[i] < 0) return {false, tag + "negative balance entry"};
      if (blk.c[i] < 0) return {false, tag + "negative coefficient"};
      if (blk.nu[i] > 0 && blk.c[i] == 0)
        return {false, tag + "positive balance against a zero coefficient"};
    }
    RationalVector bal = matvec(q, blk.nu);
    for (const Rational& v : bal)
      if (v != 0) return {false, tag + "balance vector is not in the kernel"};
    RationalVector nu, c;
    block_entropy_vectors(blk, &nu, &c);
    CheckOutcome o = check_entropy_leq(nu, c, blk.c[blk.anchor]);
    if (o == CheckOutcome::Fails)
      return {false, tag + "entropy inequality is violated"};
    if (o == CheckOutcome::Inconclusive)
      return {false, tag + "entropy inequality could not be established"};
  }
  return {true, ""};
}

}  // namespace

SageOutcome optsage(const SparsePolynomial& f, const SageOptions& opts) {
  SageOutcome out;
  const int t = f.term_count();
  const int cidx = constant_term_index(f);
  if (cidx < 0) {
    out.message = "the support needs a constant term";
    return out;
  }
  std::vector<int> anchors = negative_terms(f);
  if (anchors.empty()) {
    out.success = true;
    out.solver_status = SolveStatus::Optimal;
    out.certificate.bound = f.coeffs[cidx];
    out.numeric_bound = rational_to_double(f.coeffs[cidx]);
    out.message = "no negative terms";
    return out;
  }
  if (std::find(anchors.begin(), anchors.end(), cidx) != anchors.end() && t == 1) {
    out.message = "degenerate single-term input";
    return out;
  }

  auto t0 = std::chrono::steady_clock::now();
  RepSolution rep = solve_rep_bound(f, cidx, anchors, opts.solver_tol);
  out.solve_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.solver_status = rep.status;
  out.numeric_bound = rep.objective;
  if (rep.status != SolveStatus::Optimal) {
    out.message = "relaxation not solved: " + to_string(rep.status);
    return out;
  }

  RoundContext ctx = make_round_context(f);
  const int nb = static_cast<int>(anchors.size());
  std::vector<RationalVector> nus(nb);
  for (int k = 0; k < nb; ++k) {
    int pin = anchors[k] == cidx ? -1 : cidx;
    auto nu = round_nu(ctx, rep.nu[k], anchors[k], pin, opts.round_delta);
    if (!nu) {
      out.message = "balance rounding failed for block " + std::to_string(k);
      return out;
    }
    nus[k] = std::move(*nu);
  }
  std::vector<RationalVector> cs;
  std::string why;
  if (!project_c(f, anchors, rep.c, opts.round_delta, cidx, &cs, &why)) {
    out.message = why;
    return out;
  }

  // repair: lift each block's constant-term coefficient until its entropy
  // inequality is sound
  for (int k = 0; k < nb; ++k) {
    const int j = anchors[k];
    if (j == cidx) {
      RationalVector nu, c;
      SageBlock tmp{j, nus[k], cs[k]};
      block_entropy_vectors(tmp, &nu, &c);
      for (size_t i = 0; i < nu.size(); ++i)
        if (nu[i] > 0 && c[i] <= 0) {
          out.message = "block " + std::to_string(k) +
                        ": balance mass left on a zero coefficient";
          return out;
        }
      cs[k][j] = entropy_upper_bound(nu, c, opts.round_delta);
      continue;
    }
    const Rational& nu1 = nus[k][cidx];
    if (nu1 <= 0) {
      out.message = "block " + std::to_string(k) + ": constant balance is not positive";
      return out;
    }
    std::vector<std::pair<Rational, Rational>> terms;
    terms.emplace_back(Rational(1), nu1);
    Rational constant = Rational(-1) - cs[k][j] / nu1;
    for (int i = 0; i < t; ++i) {
      if (i == j || i == cidx || nus[k][i] == 0) continue;
      if (cs[k][i] <= 0) {
        out.message = "block " + std::to_string(k) +
                      ": balance mass left on a zero coefficient";
        return out;
      }
      terms.emplace_back(nus[k][i] / nu1, nus[k][i]);
      terms.emplace_back(-nus[k][i] / nu1, cs[k][i]);
      constant -= nus[k][i] / nu1;
    }
    cs[k][cidx] = round_up_exp_affine(terms, constant, opts.round_delta);
  }

  Rational mass(0);
  for (int k = 0; k < nb; ++k) mass += cs[k][cidx];
  out.certificate.bound = round_down(f.coeffs[cidx] - mass, opts.round_delta);
  for (int k = 0; k < nb; ++k)
    out.certificate.blocks.push_back(SageBlock{anchors[k], nus[k], cs[k]});
  out.success = true;
  return out;
}

VerifyResult verify_sage(const SparsePolynomial& f, const SageCertificate& cert) {
  VerifyResult blocks_ok = check_blocks(f, cert.blocks);
  if (!blocks_ok.ok) return blocks_ok;
  const int t = f.term_count();
  const int cidx = constant_term_index(f);
  for (int i = 0; i < t; ++i) {
    Rational total(0);
    for (const SageBlock& blk : cert.blocks) total += blk.c[i];
    if (i == cidx) {
      if (total + cert.bound > f.coeffs[i])
        return {false, "bound exceeds the remaining constant-term budget"};
    } else if (total > f.coeffs[i]) {
      return {false, "budget exceeded at term " + std::to_string(i)};
    }
  }
  if (cidx < 0 && cert.bound > 0)
    return {false, "positive bound without a constant term"};
  return {true, ""};
}

IntsageOutcome intsage(const SparsePolynomial& f, const IntsageOptions& opts) {
  IntsageOutcome out;
  std::vector<int> anchors = negative_terms(f);
  if (anchors.empty()) {
    out.status = IntsageStatus::Certified;
    out.margin = std::numeric_limits<double>::infinity();
    out.message = "no negative terms";
    return out;
  }
  RepSolution rep = solve_rep_membership(f, anchors, opts.solver_tol);
  if (rep.status != SolveStatus::Optimal) {
    out.message = "relaxation not solved: " + to_string(rep.status);
    return out;
  }
  out.margin = rep.objective;

  RoundContext ctx = make_round_context(f);
  const int nb = static_cast<int>(anchors.size());
  for (int round = 1; round <= opts.max_rounds; ++round) {
    out.rounds_used = round;
    Rational delta = opts.round_delta / rational_pow_ui(Rational(2), round - 1);

    std::vector<RationalVector> nus(nb);
    bool nu_ok = true;
    for (int k = 0; k < nb && nu_ok; ++k) {
      auto nu = round_nu(ctx, rep.nu[k], anchors[k], -1, delta);
      if (!nu)
        nu_ok = false;
      else
        nus[k] = std::move(*nu);
    }
    if (!nu_ok) continue;
    std::vector<RationalVector> cs;
    std::string why;
    if (!project_c(f, anchors, rep.c, delta, -1, &cs, &why)) {
      out.message = why;
      return out;  // structural, does not improve with smaller bands
    }
    SageMembershipCertificate cand;
    for (int k = 0; k < nb; ++k)
      cand.blocks.push_back(SageBlock{anchors[k], nus[k], cs[k]});
    VerifyResult vr = verify_sage_membership(f, cand);
    if (vr.ok) {
      out.status = IntsageStatus::Certified;
      out.certificate = std::move(cand);
      return out;
    }
    out.message = vr.reason;
  }
  out.status = IntsageStatus::MaxRoundsExceeded;
  return out;
}

VerifyResult verify_sage_membership(const SparsePolynomial& f,
                                    const SageMembershipCertificate& cert) {
  VerifyResult blocks_ok = check_blocks(f, cert.blocks);
  if (!blocks_ok.ok) return blocks_ok;
  for (int i = 0; i < f.term_count(); ++i) {
    Rational total(0);
    for (const SageBlock& blk : cert.blocks) total += blk.c[i];
    if (total > f.coeffs[i])
      return {false, "budget exceeded at term " + std::to_string(i)};
  }
  return {true, ""};
}

}  // namespace certify
