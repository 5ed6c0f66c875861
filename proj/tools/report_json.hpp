// JSON encodings of engine results.
#pragma once

#include "cli.hpp"
#include "tgit/certificate.hpp"
#include "tgit/quotient.hpp"

namespace tgit::cli {

Json to_json(const Integer& x);
Json to_json(const IntVector& v);
Json face_json(const FaceKey& key);
Json locus_json(const SubfanLocus& locus);
Json cone_json(const Cone& c);
Json certificate_json(const SemistabilityCertificate& cert);
Json semistable_json(const SemistableLocus& ss);
Json check_json(const CheckResult& r);
Json quotient_json(const GluedQuotient& q);
Json class_group_json(const ClassGroup& cg);
Json fan_json(const Fan& fan);

/// Envelope shared by every report.
Json envelope(const std::string& command, const std::string& digest, Json result);

}  // namespace tgit::cli
