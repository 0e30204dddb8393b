#pragma once

// JSON forms of parameters, Mukai vectors, certificates and sweep reports.
// Key order is fixed, so identical inputs produce identical bytes. Integers
// that fit in 64 bits are JSON numbers, larger ones decimal strings; both
// forms are accepted on input.

#include <string>
#include <vector>

#include "json.hpp"
#include "k3iso/certificate.hpp"
#include "k3iso/period.hpp"
#include "k3iso/series.hpp"

namespace k3iso {

using Json = nlohmann::ordered_json;

class FormatError : public Error {
 public:
  using Error::Error;
};

Json int_to_json(const Int& value);
Int int_from_json(const Json& j, const std::string& what);

Json to_json(const PicardParams& params);
PicardParams params_from_json(const Json& j);

Json to_json(const NVector& z);
NVector nvector_from_json(const Json& j, const std::string& what);

// {r, c1: {x, y}, s}; the parameter context is not repeated.
Json to_json(const MukaiVector& v);
MukaiVector mukai_from_json(const PicardParams& params, const Json& j);

Json to_json(const IsomorphismCertificate& cert);
// Throws FormatError on schema violations; semantic checks are left to
// verify_certificate.
IsomorphismCertificate certificate_from_json(const Json& j);

std::string dump(const Json& j);
IsomorphismCertificate parse_certificate(const std::string& text);

Json to_json(const Decision& decision);

Json to_json(const EquivalenceReport& report);
std::vector<std::string> report_lines(const EquivalenceReport& report);

Json to_json(const PeriodSweepRecord& rec);
Json period_report_json(const std::vector<PeriodSweepRecord>& records);
std::vector<std::string> report_lines(const std::vector<PeriodSweepRecord>& records);

}  // namespace k3iso
