#include <cmath>
#include <stdexcept>

#include "certify/cert_io.hpp"
#include "certify/sage_cert.hpp"
#include "certify/sonc_cert.hpp"
#include "doctest.h"

using namespace certify;

namespace {

SparsePolynomial make(int n, std::vector<Exponent> exps, std::vector<Rational> coeffs,
                      bool allow_negative = false) {
  SparsePolynomial p;
  p.n = n;
  p.exponents = std::move(exps);
  p.coeffs = std::move(coeffs);
  canonicalize(p, allow_negative);
  return p;
}

SparsePolynomial quad() { return make(1, {{0}, {1}, {2}}, {1, -1, 1}); }

SparsePolynomial motzkin() {
  return make(2, {{0, 0}, {2, 4}, {4, 2}, {2, 2}}, {1, 1, 1, -3});
}

SparsePolynomial sym_pair(const Rational& c0) {
  return make(1, {{-2}, {0}, {2}}, {1, c0, 1}, true);
}

}  // namespace

TEST_CASE("optsonc quad reaches three quarters exactly") {
  SparsePolynomial p = quad();
  for (GpMode mode : {GpMode::LogDomain, GpMode::Direct}) {
    SoncOptions opts;
    opts.mode = mode;
    SoncOutcome out = optsonc(p, opts);
    REQUIRE(out.success);
    CHECK(out.solver_status == SolveStatus::Optimal);
    CHECK(out.certificate.bound == Rational(3, 4));
    CHECK(verify_sonc(p, out.certificate).ok);
  }
}

TEST_CASE("optsonc motzkin reaches zero exactly") {
  SparsePolynomial p = motzkin();
  SoncOutcome out = optsonc(p);
  REQUIRE(out.success);
  CHECK(out.certificate.bound == 0);
  CHECK(std::fabs(out.numeric_bound) < 1e-5);
  VerifyResult vr = verify_sonc(p, out.certificate);
  CHECK(vr.ok);
}

TEST_CASE("optsonc rejects uncoverable supports gracefully") {
  SparsePolynomial p = make(2, {{0, 0}, {2, 2}, {4, 0}}, {1, -1, 1});
  SoncOutcome out = optsonc(p);
  CHECK_FALSE(out.success);
  CHECK(!out.message.empty());
}

TEST_CASE("sonc tampering is caught") {
  SparsePolynomial p = quad();
  SoncOutcome out = optsonc(p);
  REQUIRE(out.success);

  SoncCertificate cert = out.certificate;
  cert.bound += Rational(1, 1000);
  CHECK_FALSE(verify_sonc(p, cert).ok);

  cert = out.certificate;
  REQUIRE(cert.circuits.size() == 1);
  cert.circuits[0].lambda = {Rational(3, 5), Rational(2, 5)};
  CHECK_FALSE(verify_sonc(p, cert).ok);

  cert = out.certificate;
  for (auto& x : cert.circuits[0].x) x /= 2;  // breaks the power inequality
  CHECK_FALSE(verify_sonc(p, cert).ok);

  cert = out.certificate;
  for (auto& x : cert.circuits[0].x) x *= 2;  // blows the square budget
  CHECK_FALSE(verify_sonc(p, cert).ok);

  cert = out.certificate;
  cert.circuits[0].support[0] = cert.circuits[0].support[1];
  CHECK_FALSE(verify_sonc(p, cert).ok);

  cert = out.certificate;
  cert.circuits[0].beta_index = 0;  // constant is not a non-square term
  CHECK_FALSE(verify_sonc(p, cert).ok);

  cert = out.certificate;
  cert.circuits.clear();  // the covered term loses its certificate
  CHECK_FALSE(verify_sonc(p, cert).ok);
}

TEST_CASE("optsage on the symmetric pair is exact") {
  SparsePolynomial f = sym_pair(Rational(-21, 10));
  SageOutcome out = optsage(f);
  REQUIRE(out.success);
  CHECK(out.certificate.bound == Rational(-1, 10));
  CHECK(out.numeric_bound == doctest::Approx(-0.1).epsilon(1e-5));
  CHECK(verify_sage(f, out.certificate).ok);
}

TEST_CASE("optsage quad stays within rounding loss of the optimum") {
  SparsePolynomial p = quad();
  SageOutcome out = optsage(p);
  REQUIRE(out.success);
  CHECK(verify_sage(p, out.certificate).ok);
  double exact = rational_to_double(out.certificate.bound);
  CHECK(exact <= 0.75 + 1e-9);
  CHECK(exact >= 0.75 - 1e-3);
}

TEST_CASE("optsage without negative terms keeps the constant") {
  SparsePolynomial p = make(1, {{0}, {2}}, {1, 1});
  SageOutcome out = optsage(p);
  REQUIRE(out.success);
  CHECK(out.certificate.bound == 1);
  CHECK(out.certificate.blocks.empty());
  CHECK(verify_sage(p, out.certificate).ok);
}

TEST_CASE("optsage needs a constant term") {
  SparsePolynomial p = make(1, {{1}, {2}}, {-1, 1});
  SageOutcome out = optsage(p);
  CHECK_FALSE(out.success);
  CHECK(out.message == "the support needs a constant term");
}

TEST_CASE("sage tampering is caught") {
  SparsePolynomial f = sym_pair(Rational(-21, 10));
  SageOutcome out = optsage(f);
  REQUIRE(out.success);
  REQUIRE(out.certificate.blocks.size() == 1);

  SageCertificate cert = out.certificate;
  cert.bound += Rational(1, 1000);
  CHECK_FALSE(verify_sage(f, cert).ok);

  cert = out.certificate;
  cert.blocks[0].nu[0] += 1;  // leaves the kernel
  CHECK_FALSE(verify_sage(f, cert).ok);

  cert = out.certificate;
  cert.blocks[0].nu[0] = -cert.blocks[0].nu[0];
  CHECK_FALSE(verify_sage(f, cert).ok);

  cert = out.certificate;
  cert.blocks[0].anchor = 5;
  CHECK_FALSE(verify_sage(f, cert).ok);

  cert = out.certificate;
  // demand more entropy budget than the block can pay
  cert.blocks[0].c[cert.blocks[0].anchor] -= 2;
  CHECK_FALSE(verify_sage(f, cert).ok);

  cert = out.certificate;
  for (auto& c : cert.blocks[0].c) c *= 2;  // exceeds the coefficient budgets
  CHECK_FALSE(verify_sage(f, cert).ok);
}

TEST_CASE("intsage certifies the interior instance without extra rounds") {
  SparsePolynomial f = sym_pair(Rational(3));
  IntsageOutcome out = intsage(f);
  CHECK(out.status == IntsageStatus::Certified);
  CHECK(out.rounds_used <= 3);
  CHECK(std::isinf(out.margin));
  CHECK(verify_sage_membership(f, out.certificate).ok);
}

TEST_CASE("intsage certifies a strict member with a finite margin") {
  SparsePolynomial f = sym_pair(Rational(-1));
  IntsageOutcome out = intsage(f);
  REQUIRE(out.status == IntsageStatus::Certified);
  CHECK(out.rounds_used <= 3);
  CHECK(out.margin == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(verify_sage_membership(f, out.certificate).ok);
}

TEST_CASE("intsage exhausts rounds outside the cone") {
  SparsePolynomial f = sym_pair(Rational(-21, 10));
  IntsageOutcome out = intsage(f);
  CHECK(out.status == IntsageStatus::MaxRoundsExceeded);
  CHECK(out.rounds_used == 20);
  CHECK(out.margin == doctest::Approx(-0.1).epsilon(1e-4));
  CHECK(!out.message.empty());
}

TEST_CASE("membership tampering is caught") {
  SparsePolynomial f = sym_pair(Rational(-1));
  IntsageOutcome out = intsage(f);
  REQUIRE(out.status == IntsageStatus::Certified);

  SageMembershipCertificate cert = out.certificate;
  REQUIRE(!cert.blocks.empty());
  cert.blocks[0].c[2] = f.coeffs[2] + 1;  // above the budget
  CHECK_FALSE(verify_sage_membership(f, cert).ok);

  cert = out.certificate;
  cert.blocks[0].nu[2] += Rational(1, 7);
  CHECK_FALSE(verify_sage_membership(f, cert).ok);
}

TEST_CASE("certificates survive the JSON round trip") {
  SparsePolynomial p = quad();
  SoncOutcome sonc = optsonc(p);
  REQUIRE(sonc.success);
  AnyCertificate back = parse_certificate(serialize_certificate(sonc.certificate));
  auto* sc = std::get_if<SoncCertificate>(&back);
  REQUIRE(sc != nullptr);
  CHECK(sc->bound == sonc.certificate.bound);
  CHECK(verify_sonc(p, *sc).ok);

  SparsePolynomial f = sym_pair(Rational(-21, 10));
  SageOutcome sage = optsage(f);
  REQUIRE(sage.success);
  AnyCertificate back2 = parse_certificate(serialize_certificate(sage.certificate));
  auto* gc = std::get_if<SageCertificate>(&back2);
  REQUIRE(gc != nullptr);
  CHECK(gc->bound == sage.certificate.bound);
  CHECK(verify_sage(f, *gc).ok);

  SparsePolynomial g = sym_pair(Rational(-1));
  IntsageOutcome mem = intsage(g);
  REQUIRE(mem.status == IntsageStatus::Certified);
  AnyCertificate back3 = parse_certificate(serialize_certificate(mem.certificate));
  auto* mc = std::get_if<SageMembershipCertificate>(&back3);
  REQUIRE(mc != nullptr);
  CHECK(verify_sage_membership(g, *mc).ok);
}

TEST_CASE("certificate parser rejects malformed documents") {
  CHECK_THROWS_AS(parse_certificate("nope"), std::invalid_argument);
  CHECK_THROWS_AS(parse_certificate(R"({"bound": "1"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_certificate(R"({"type": "wat"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_certificate(R"({"type": "sonc"})"), std::invalid_argument);
  CHECK_THROWS_AS(
      parse_certificate(R"({"type": "sonc", "bound": 0.5, "circuits": []})"),
      std::invalid_argument);
  CHECK_THROWS_AS(parse_certificate(R"({"type": "sage", "bound": "1"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_certificate(
          R"({"type": "sage", "bound": "1", "blocks": [{"anchor": 0, "nu": ["1"]}]})"),
      std::invalid_argument);
}

TEST_CASE("certificate bitsize reflects the stored rationals") {
  SoncCertificate c;
  c.bound = Rational(3, 4);
  CHECK(certificate_bitsize(c) == 3);
  SoncCircuit circ;
  circ.beta_index = 1;
  circ.support = {0, 2};
  circ.lambda = {Rational(1, 2), Rational(1, 2)};
  circ.x = {Rational(1, 1024), Rational(1)};
  c.circuits.push_back(circ);
  CHECK(certificate_bitsize(c) == 11);
}
