// Conversion of engine data to the oracle's plain instances.
#pragma once

#include "tgit/action.hpp"
#include "tgit/oracle/oracle.hpp"

namespace tgit::testing {

inline oracle::Instance to_oracle(const Fan& fan, const SubtorusAction& action, const std::vector<ToricDivisor>& divisors,
                                  const Linearization& lin, bool group) {
    oracle::Instance in;
    in.lattice_rank = fan.lattice_rank();
    in.rays = fan.rays();
    for (const auto& f : fan.faces()) in.faces.push_back(f.key);
    in.weight_rows = action.phi_star().row_vectors();
    for (const auto& d : divisors) in.divisors.push_back(d.coefficients);
    in.shifts = lin.shifts;
    in.group = group;
    return in;
}

inline SubfanLocus to_locus(const std::set<oracle::Face>& faces) { return SubfanLocus(faces); }

}  // namespace tgit::testing
