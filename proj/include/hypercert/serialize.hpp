#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>

#include "hypercert/bounds.hpp"
#include "hypercert/certify.hpp"
#include "hypercert/mc_oracle.hpp"

namespace hypercert::io {

using nlohmann::json;

/// Renders floats with 17 significant digits; NaN and infinities become null.
std::string dumpJson(const json& j, int indent = 2);

json toJson(const certify::SubintervalCertificate& c);
json toJson(const certify::PartitionCertificate& cert);
json toJson(const certify::CertifyFailure& f);
json toJson(const certify::OptimizeResult& r);
json toJson(const bounds::RankBoundReport& r);
json toJson(const mc::CrossCheck& c);

/// Inverse of toJson(PartitionCertificate); null fields read back as NaN.
certify::PartitionCertificate certificateFromJson(const json& j);

inline constexpr const char* kCsvHeader =
    "index,dLo,dHi,hLo,hHi,sigmaLo,sigmaHi,psiLo,psiHi,wlensLo,wconeLo,phiLo,good,m1,m2,m3";

/// One row per cell under kCsvHeader; index is 1-based.
void writeCsv(std::ostream& os, const certify::PartitionCertificate& cert);

std::string formatDouble(double v);

}  // namespace hypercert::io
