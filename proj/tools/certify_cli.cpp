#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "certify/bench.hpp"
#include "certify/cert_io.hpp"
#include "certify/generator.hpp"
#include "certify/poly.hpp"
#include "certify/sage_cert.hpp"
#include "certify/sonc_cert.hpp"

namespace {

constexpr int kMaxTerms = 50;
constexpr long kMaxDegree = 29;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

certify::SparsePolynomial load_instance(const std::string& path, bool laurent) {
  certify::SparsePolynomial p = certify::parse_instance(slurp(path), laurent);
  if (p.term_count() > kMaxTerms)
    throw std::runtime_error("instance has more than " + std::to_string(kMaxTerms) + " terms");
  if (certify::degree(p) > kMaxDegree)
    throw std::runtime_error("instance degree exceeds " + std::to_string(kMaxDegree));
  return p;
}

certify::Rational delta_from_double(double d) {
  if (!(d > 0)) throw std::runtime_error("delta must be positive");
  return certify::rational_from_double(d);
}

int cmd_gen(const certify::GeneratorParams& params, bool expand, const std::string& out_path) {
  certify::SparsePolynomial p = certify::generate_instance(params);
  if (expand) p = certify::expand_signomial(p);
  std::string text = certify::serialize_instance(p);
  if (out_path.empty())
    std::cout << text << "\n";
  else
    spill(out_path, text + "\n");
  return 0;
}

int cmd_run(const std::string& instance_path, const std::string& method,
            const std::string& mode, double tol, double delta,
            const std::string& cert_path) {
  using namespace certify;
  if (method == "sonc") {
    SparsePolynomial p = load_instance(instance_path, false);
    SoncOptions opts;
    opts.solver_tol = tol;
    opts.round_delta = delta_from_double(delta);
    opts.mode = mode == "direct" ? GpMode::Direct : GpMode::LogDomain;
    SoncOutcome out = optsonc(p, opts);
    std::cout << "solver: " << to_string(out.solver_status) << "\n";
    std::cout << "numeric bound: " << out.numeric_bound << "\n";
    if (!out.success) {
      std::cout << "no certificate: " << out.message << "\n";
      return 1;
    }
    std::cout << "exact bound: " << rational_to_string(out.certificate.bound) << "\n";
    if (!cert_path.empty()) spill(cert_path, serialize_certificate(out.certificate) + "\n");
    return 0;
  }
  if (method == "sage") {
    SparsePolynomial f = load_instance(instance_path, true);
    SageOptions opts;
    opts.solver_tol = tol;
    opts.round_delta = delta_from_double(delta);
    SageOutcome out = optsage(f, opts);
    std::cout << "solver: " << to_string(out.solver_status) << "\n";
    std::cout << "numeric bound: " << out.numeric_bound << "\n";
    if (!out.success) {
      std::cout << "no certificate: " << out.message << "\n";
      return 1;
    }
    std::cout << "exact bound: " << rational_to_string(out.certificate.bound) << "\n";
    if (!cert_path.empty()) spill(cert_path, serialize_certificate(out.certificate) + "\n");
    return 0;
  }
  if (method == "intsage") {
    SparsePolynomial f = load_instance(instance_path, true);
    IntsageOptions opts;
    opts.solver_tol = tol;
    opts.round_delta = delta_from_double(delta);
    IntsageOutcome out = intsage(f, opts);
    std::cout << "numeric margin: " << out.margin << "\n";
    std::cout << "rounds used: " << out.rounds_used << "\n";
    if (out.status != IntsageStatus::Certified) {
      std::cout << "not certified: " << out.message << "\n";
      return 1;
    }
    std::cout << "certified interior point\n";
    if (!cert_path.empty()) spill(cert_path, serialize_certificate(out.certificate) + "\n");
    return 0;
  }
  std::cerr << "unknown method " << method << "\n";
  return 2;
}

int cmd_verify(const std::string& instance_path, const std::string& cert_path) {
  using namespace certify;
  AnyCertificate cert = parse_certificate(slurp(cert_path));
  VerifyResult res;
  if (std::holds_alternative<SoncCertificate>(cert)) {
    SparsePolynomial p = parse_instance(slurp(instance_path), false);
    res = verify_sonc(p, std::get<SoncCertificate>(cert));
  } else if (std::holds_alternative<SageCertificate>(cert)) {
    SparsePolynomial f = parse_instance(slurp(instance_path), true);
    res = verify_sage(f, std::get<SageCertificate>(cert));
  } else {
    SparsePolynomial f = parse_instance(slurp(instance_path), true);
    res = verify_sage_membership(f, std::get<SageMembershipCertificate>(cert));
  }
  if (res.ok) {
    std::cout << "accepted\n";
    return 0;
  }
  std::cout << "rejected: " << res.reason << "\n";
  return 1;
}

int cmd_bench(int count, std::uint64_t seed, int jobs, const std::string& csv_path,
              const std::string& json_path) {
  using namespace certify;
  std::vector<BenchInstance> suite = default_suite(seed, count);
  std::vector<BenchRecord> records;
  BenchSummary summary = run_batch(suite, records, jobs);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot write " + csv_path);
    write_bench_csv(records, csv);
  }
  std::string summary_text = bench_summary_json(summary);
  if (!json_path.empty()) spill(json_path, summary_text + "\n");
  std::cout << summary_text << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact nonnegativity certificates for sparse polynomials and signomials"};
  app.require_subcommand(1);

  certify::GeneratorParams gen_params;
  std::string gen_kind = "poly";
  bool gen_expand = false;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("-n,--vars", gen_params.n, "number of variables");
  gen->add_option("-d,--degree", gen_params.degree, "degree budget");
  gen->add_option("-t,--terms", gen_params.terms, "target support size");
  gen->add_option("--seed", gen_params.seed, "rng seed");
  gen->add_option("--kind", gen_kind)->check(CLI::IsMember({"poly", "signomial"}));
  gen->add_flag("--expand", gen_expand, "substitute x_i -> e^x_i - e^-x_i");
  gen->add_option("-o,--output", gen_out, "write JSON here instead of stdout");

  std::string run_instance, run_method = "sonc", run_mode = "log", run_cert;
  double run_tol = 1.1920928955078125e-07;  // 2^-23
  double run_delta = 1.1920928955078125e-07;
  auto* run = app.add_subcommand("run", "compute a certified lower bound");
  run->add_option("-i,--instance", run_instance)->required();
  run->add_option("-m,--method", run_method)->check(CLI::IsMember({"sonc", "sage", "intsage"}));
  run->add_option("--mode", run_mode)->check(CLI::IsMember({"log", "direct"}));
  run->add_option("--solver-tol", run_tol, "numeric solver tolerance");
  run->add_option("--round-delta", run_delta, "rounding tolerance");
  run->add_option("-o,--certificate", run_cert, "write the certificate here");

  std::string ver_instance, ver_cert;
  auto* ver = app.add_subcommand("verify", "check a certificate in exact arithmetic");
  ver->add_option("-i,--instance", ver_instance)->required();
  ver->add_option("-c,--certificate", ver_cert)->required();

  int bench_count = 200, bench_jobs = static_cast<int>(std::thread::hardware_concurrency());
  std::uint64_t bench_seed = 1;
  std::string bench_csv, bench_json;
  auto* bench = app.add_subcommand("bench", "run the generated benchmark suite");
  bench->add_option("--count", bench_count);
  bench->add_option("--seed", bench_seed);
  bench->add_option("--jobs", bench_jobs);
  bench->add_option("--out-csv", bench_csv);
  bench->add_option("--out-json", bench_json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      gen_params.kind = gen_kind == "poly" ? certify::GeneratorParams::Kind::Polynomial
                                           : certify::GeneratorParams::Kind::Signomial;
      return cmd_gen(gen_params, gen_expand, gen_out);
    }
    if (run->parsed())
      return cmd_run(run_instance, run_method, run_mode, run_tol, run_delta, run_cert);
    if (ver->parsed()) return cmd_verify(ver_instance, ver_cert);
    if (bench->parsed())
      return cmd_bench(bench_count, bench_seed, std::max(1, bench_jobs), bench_csv, bench_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
