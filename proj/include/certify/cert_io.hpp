#pragma once

#include <string>
#include <variant>

#include "certify/certificates.hpp"

namespace certify {

using AnyCertificate =
    std::variant<SoncCertificate, SageCertificate, SageMembershipCertificate>;

std::string serialize_certificate(const SoncCertificate& cert);
std::string serialize_certificate(const SageCertificate& cert);
std::string serialize_certificate(const SageMembershipCertificate& cert);

// Accepts the three certificate layouts, dispatching on "type"; throws
// std::invalid_argument with a located message on malformed input.
AnyCertificate parse_certificate(const std::string& json_text);

}  // namespace certify
