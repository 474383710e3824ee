#include "certify/cert_io.hpp"

#include "json.hpp"

#include <stdexcept>

namespace certify {

namespace {

using nlohmann::json;

json rationals_to_json(const RationalVector& v) {
  json out = json::array();
  for (const Rational& q : v) out.push_back(rational_to_string(q));
  return out;
}

Rational rational_field(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    auto q = rational_from_string(j.get<std::string>());
    if (q) return *q;
  }
  throw std::invalid_argument("certificate: " + where +
                              " must be an integer or a rational \"num/den\" string");
}

RationalVector rational_array(const json& j, const std::string& where) {
  if (!j.is_array())
    throw std::invalid_argument("certificate: " + where + " must be an array");
  RationalVector out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(rational_field(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

int int_field(const json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw std::invalid_argument("certificate: " + where + " must be an integer");
  return j.get<int>();
}

std::vector<SageBlock> parse_blocks(const json& doc) {
  if (!doc.contains("blocks") || !doc["blocks"].is_array())
    throw std::invalid_argument("certificate: expected a \"blocks\" array");
  std::vector<SageBlock> blocks;
  int idx = 0;
  for (const auto& b : doc["blocks"]) {
    std::string where = "blocks[" + std::to_string(idx++) + "]";
    if (!b.is_object() || !b.contains("anchor") || !b.contains("nu") || !b.contains("c"))
      throw std::invalid_argument("certificate: " + where +
                                  " needs \"anchor\", \"nu\" and \"c\"");
    SageBlock blk;
    blk.anchor = int_field(b["anchor"], where + ".anchor");
    blk.nu = rational_array(b["nu"], where + ".nu");
    blk.c = rational_array(b["c"], where + ".c");
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

}  // namespace

std::string serialize_certificate(const SoncCertificate& cert) {
  json doc;
  doc["type"] = "sonc";
  doc["bound"] = rational_to_string(cert.bound);
  doc["circuits"] = json::array();
  for (const SoncCircuit& c : cert.circuits) {
    json jc;
    jc["term"] = c.beta_index;
    jc["support"] = c.support;
    jc["lambda"] = rationals_to_json(c.lambda);
    jc["x"] = rationals_to_json(c.x);
    doc["circuits"].push_back(std::move(jc));
  }
  return doc.dump(2);
}

std::string serialize_certificate(const SageCertificate& cert) {
  json doc;
  doc["type"] = "sage";
  doc["bound"] = rational_to_string(cert.bound);
  doc["blocks"] = json::array();
  for (const SageBlock& b : cert.blocks) {
    json jb;
    jb["anchor"] = b.anchor;
    jb["nu"] = rationals_to_json(b.nu);
    jb["c"] = rationals_to_json(b.c);
    doc["blocks"].push_back(std::move(jb));
  }
  return doc.dump(2);
}

std::string serialize_certificate(const SageMembershipCertificate& cert) {
  json doc;
  doc["type"] = "sage_membership";
  doc["blocks"] = json::array();
  for (const SageBlock& b : cert.blocks) {
    json jb;
    jb["anchor"] = b.anchor;
    jb["nu"] = rationals_to_json(b.nu);
    jb["c"] = rationals_to_json(b.c);
    doc["blocks"].push_back(std::move(jb));
  }
  return doc.dump(2);
}

AnyCertificate parse_certificate(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("certificate: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
    throw std::invalid_argument("certificate: expected an object with a \"type\" string");
  std::string type = doc["type"].get<std::string>();

  if (type == "sonc") {
    SoncCertificate cert;
    if (!doc.contains("bound"))
      throw std::invalid_argument("certificate: missing \"bound\"");
    cert.bound = rational_field(doc["bound"], "bound");
    if (!doc.contains("circuits") || !doc["circuits"].is_array())
      throw std::invalid_argument("certificate: expected a \"circuits\" array");
    int idx = 0;
    for (const auto& c : doc["circuits"]) {
      std::string where = "circuits[" + std::to_string(idx++) + "]";
      if (!c.is_object() || !c.contains("term") || !c.contains("support") ||
          !c.contains("lambda") || !c.contains("x"))
        throw std::invalid_argument("certificate: " + where +
                                    " needs \"term\", \"support\", \"lambda\", \"x\"");
      SoncCircuit circ;
      circ.beta_index = int_field(c["term"], where + ".term");
      if (!c["support"].is_array())
        throw std::invalid_argument("certificate: " + where + ".support must be an array");
      for (const auto& s : c["support"])
        circ.support.push_back(int_field(s, where + ".support[]"));
      circ.lambda = rational_array(c["lambda"], where + ".lambda");
      circ.x = rational_array(c["x"], where + ".x");
      cert.circuits.push_back(std::move(circ));
    }
    return cert;
  }
  if (type == "sage") {
    SageCertificate cert;
    if (!doc.contains("bound"))
      throw std::invalid_argument("certificate: missing \"bound\"");
    cert.bound = rational_field(doc["bound"], "bound");
    cert.blocks = parse_blocks(doc);
    return cert;
  }
  if (type == "sage_membership") {
    SageMembershipCertificate cert;
    cert.blocks = parse_blocks(doc);
    return cert;
  }
  throw std::invalid_argument("certificate: unknown type \"" + type + "\"");
}

int certificate_bitsize(const SoncCertificate& cert) {
  int best = bitsize(cert.bound);
  for (const SoncCircuit& c : cert.circuits) {
    for (const Rational& q : c.lambda) best = std::max(best, bitsize(q));
    for (const Rational& q : c.x) best = std::max(best, bitsize(q));
  }
  return best;
}

namespace {
int blocks_bitsize(const std::vector<SageBlock>& blocks, int best) {
  for (const SageBlock& b : blocks) {
    for (const Rational& q : b.nu) best = std::max(best, bitsize(q));
    for (const Rational& q : b.c) best = std::max(best, bitsize(q));
  }
  return best;
}
}  // namespace

int certificate_bitsize(const SageCertificate& cert) {
  return blocks_bitsize(cert.blocks, bitsize(cert.bound));
}

int certificate_bitsize(const SageMembershipCertificate& cert) {
  return blocks_bitsize(cert.blocks, 1);
}

}  // namespace certify
