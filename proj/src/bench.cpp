#include "certify/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <thread>

#include "certify/cert_io.hpp"
#include "certify/generator.hpp"
#include "certify/sage_cert.hpp"
#include "certify/sonc_cert.hpp"

#include "json.hpp"

namespace certify {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double relative_gap(double numeric, const Rational& exact) {
  double diff = std::fabs(numeric - rational_to_double(exact));
  return diff / std::max(1.0, std::fabs(numeric));
}

}  // namespace

std::vector<BenchInstance> default_suite(std::uint64_t seed, int count) {
  std::vector<BenchInstance> out;
  out.reserve(count);
  const int n_poly = (count * 3) / 5;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    BenchInstance inst;
    GeneratorParams params;
    params.seed = seed * 1000003ull + static_cast<std::uint64_t>(i);
    if (i < n_poly) {
      inst.method = "sonc";
      params.kind = GeneratorParams::Kind::Polynomial;
      params.n = 2 + static_cast<int>(rng() % 2);
      params.degree = params.n == 2 ? 4 + 2 * static_cast<int>(rng() % 3)
                                    : 4 + 2 * static_cast<int>(rng() % 2);
      params.terms = 6 + static_cast<int>(rng() % 7);
    } else {
      inst.method = "sage";
      params.kind = GeneratorParams::Kind::Signomial;
      params.n = 1 + static_cast<int>(rng() % 3);
      params.degree = 2 + static_cast<int>(rng() % 4);
      params.terms = 6 + static_cast<int>(rng() % 7);
    }
    inst.poly = generate_instance(params);
    inst.id = (inst.method == "sonc" ? "p" : "s") + std::to_string(i);
    out.push_back(std::move(inst));
  }
  return out;
}

BenchRecord run_bench_instance(const BenchInstance& inst) {
  BenchRecord rec;
  rec.id = inst.id;
  rec.method = inst.method;
  rec.n = inst.poly.n;
  rec.degree = degree(inst.poly);
  rec.terms = inst.poly.term_count();
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (inst.method == "sonc") {
      SoncOutcome out = optsonc(inst.poly);
      rec.t_solve = out.solve_seconds;
      rec.has_numeric = out.solver_status == SolveStatus::Optimal;
      rec.numeric_bound = out.numeric_bound;
      if (!rec.has_numeric) {
        rec.status = "solver_" + to_string(out.solver_status);
      } else if (!out.success) {
        rec.status = "round_failed";
      } else if (VerifyResult v = verify_sonc(inst.poly, out.certificate); !v.ok) {
        rec.status = "verify_failed";
      } else {
        rec.status = "ok";
        rec.has_exact = true;
        rec.exact_bound = out.certificate.bound;
        rec.gap = relative_gap(rec.numeric_bound, rec.exact_bound);
        rec.bitsize = certificate_bitsize(out.certificate);
      }
    } else {
      SageOutcome out = optsage(inst.poly);
      rec.t_solve = out.solve_seconds;
      rec.has_numeric = out.solver_status == SolveStatus::Optimal;
      rec.numeric_bound = out.numeric_bound;
      if (!rec.has_numeric) {
        rec.status = "solver_" + to_string(out.solver_status);
      } else if (!out.success) {
        rec.status = "round_failed";
      } else if (VerifyResult v = verify_sage(inst.poly, out.certificate); !v.ok) {
        rec.status = "verify_failed";
      } else {
        rec.status = "ok";
        rec.has_exact = true;
        rec.exact_bound = out.certificate.bound;
        rec.gap = relative_gap(rec.numeric_bound, rec.exact_bound);
        rec.bitsize = certificate_bitsize(out.certificate);
      }
    }
  } catch (const std::exception&) {
    rec.status = "error";
  }
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rec.t_round = std::max(0.0, total - rec.t_solve);
  return rec;
}

BenchSummary run_batch(const std::vector<BenchInstance>& instances,
                       std::vector<BenchRecord>& records, int jobs) {
  records.assign(instances.size(), BenchRecord{});
  std::atomic<std::size_t> next{0};
  auto t0 = std::chrono::steady_clock::now();
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= instances.size()) return;
      records[i] = run_bench_instance(instances[i]);
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < std::max(1, jobs); ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  BenchSummary s;
  s.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& r : records) {
    ++s.total;
    ++s.status_counts[r.status];
    if (r.status != "ok") continue;
    ++s.certified;
    if (r.gap <= 1e-3)
      ++s.gap_le_1e3;
    else if (r.gap <= 1.0)
      ++s.gap_le_1;
    else
      ++s.gap_gt_1;
  }
  return s;
}

void write_bench_csv(const std::vector<BenchRecord>& records, std::ostream& os) {
  os << "id,method,n,d,t,numeric_bound,exact_bound,gap,bitsize,t_solve,t_round,status\n";
  for (const auto& r : records) {
    os << r.id << ',' << r.method << ',' << r.n << ',' << r.degree << ',' << r.terms << ',';
    if (r.has_numeric) os << fmt(r.numeric_bound);
    os << ',';
    if (r.has_exact) os << rational_to_string(r.exact_bound);
    os << ',';
    if (r.gap >= 0) os << fmt(r.gap);
    os << ',' << r.bitsize << ',' << fmt(r.t_solve) << ',' << fmt(r.t_round) << ','
       << r.status << '\n';
  }
}

std::string bench_summary_json(const BenchSummary& s) {
  nlohmann::json j;
  j["total"] = s.total;
  j["certified"] = s.certified;
  j["elapsed_seconds"] = s.elapsed_seconds;
  j["gap_histogram"] = {{"le_1e-3", s.gap_le_1e3},
                        {"1e-3_to_1", s.gap_le_1},
                        {"gt_1", s.gap_gt_1}};
  j["status_counts"] = s.status_counts;
  return j.dump(2);
}

}  // namespace certify
