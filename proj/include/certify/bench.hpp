#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "certify/poly.hpp"

namespace certify {

struct BenchInstance {
  std::string id;
  std::string method;  // "sonc" | "sage"
  SparsePolynomial poly;
};

struct BenchRecord {
  std::string id;
  std::string method;
  int n = 0;
  long degree = 0;
  int terms = 0;
  bool has_numeric = false;
  double numeric_bound = 0;
  bool has_exact = false;
  Rational exact_bound;
  double gap = -1;  // |numeric - exact| / max(1, |numeric|); -1 when no certificate
  int bitsize = 0;
  double t_solve = 0;
  double t_round = 0;
  std::string status;  // "ok", "solver_<state>", "round_failed", "verify_failed", "error"
};

struct BenchSummary {
  int total = 0;
  int certified = 0;
  int gap_le_1e3 = 0;  // certified with gap <= 1e-3
  int gap_le_1 = 0;    // certified with 1e-3 < gap <= 1
  int gap_gt_1 = 0;
  double elapsed_seconds = 0;
  std::map<std::string, int> status_counts;
};

// Deterministic mix of polynomial and signomial instances; roughly three
// fifths go to the polynomial route.
std::vector<BenchInstance> default_suite(std::uint64_t seed, int count);

// Runs one instance end to end (relaxation, rounding, independent exact
// re-verification); all failures are folded into the status field.
BenchRecord run_bench_instance(const BenchInstance& inst);

// Worker-pool driver. Records land in instance order and every instance
// produces a record, even on per-instance errors.
BenchSummary run_batch(const std::vector<BenchInstance>& instances,
                       std::vector<BenchRecord>& records, int jobs);

void write_bench_csv(const std::vector<BenchRecord>& records, std::ostream& os);
std::string bench_summary_json(const BenchSummary& summary);

}  // namespace certify
