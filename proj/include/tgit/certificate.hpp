// Replays semistability certificates clause by clause.
//
// Uses only pairings, the fan's face data and integer ranks; never the cone or
// feasibility machinery that produced the certificate.
#pragma once

#include "tgit/action.hpp"
#include "tgit/toric.hpp"

#include <string>
#include <vector>

namespace tgit {

struct CheckResult {
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

CheckResult check_certificate(const SemistabilityCertificate& cert, const std::vector<ToricDivisor>& basis,
                              const Linearization& lin, const SubtorusAction& action, const Fan& fan);

/// Face-closedness, a certificate on every maximal element, and every certificate.
CheckResult check_locus(const SemistableLocus& ss, const std::vector<ToricDivisor>& basis, const Linearization& lin,
                        const SubtorusAction& action, const Fan& fan);

}  // namespace tgit
