#pragma once

#include "surdforge/contfrac.hpp"
#include "surdforge/pell.hpp"

#include "json.hpp"

#include <string>

namespace surdforge {

// Certificates serialize to single UTF-8 JSON objects. Every arbitrary-
// precision integer is emitted as a decimal string, never as a JSON number:
// solution pairs outgrow the 2^53 double mantissa within ~40 recurrence
// steps. The exact schemas are documented in docs/certificate-schema.md.

nlohmann::json to_json(const DescentCertificate& cert);
nlohmann::json to_json(const PeriodicityCertificate& cert);

// Strict parsers: unknown keys, missing keys, wrong value types, or invalid
// decimal strings all throw std::invalid_argument.
DescentCertificate descent_certificate_from_json(const nlohmann::json& j);
PeriodicityCertificate periodicity_certificate_from_json(const nlohmann::json& j);

struct VerifyOutcome {
    bool verified = false;
    std::string reason;  // empty when verified
};

// Parses either certificate kind from raw text and re-runs all of its
// checks. Malformed input is a verification failure, not an exception.
VerifyOutcome verify_certificate_text(const std::string& text);

}  // namespace surdforge
