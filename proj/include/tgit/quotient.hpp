// Good quotients of semistable loci, glued from quotient-fan charts.
//
// Each maximal certified cone sigma_i maps to pi(sigma_i) under the projection
// pi: N -> N / L. Orbits of faces map to orbits of the smallest image face
// containing them; saturation, separatedness and geometricity are decided from
// that combinatorics.
#pragma once

#include "tgit/action.hpp"
#include "tgit/cone.hpp"
#include "tgit/execution.hpp"
#include "tgit/toric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tgit {

struct QuotientChart {
    FaceKey source;
    Cone image;
};

struct OrbitImage {
    FaceKey face;
    std::size_t chart = 0;
    Cone image;
};

struct Gluing {
    std::size_t first = 0;
    std::size_t second = 0;
    /// sigma_first ∩ sigma_second.
    FaceKey common;
    /// pi(sigma_first ∩ sigma_second).
    Cone image;
    /// pi(sigma_first) ∩ pi(sigma_second).
    Cone image_meet;
};

struct GluedQuotient {
    LatticeMap projection;
    /// Invariant factors > 1 of N / im(phi): finite isotropy of the action.
    IntVector torsion;
    std::vector<QuotientChart> charts;
    std::vector<Gluing> gluings;
    std::vector<OrbitImage> orbit_map;
    bool good = true;
    bool geometric = true;
    bool separated = true;
    std::vector<std::string> diagnostics;
    /// The charts as a fan in N / L modulo the common lineality of the images,
    /// when separated.
    std::optional<Fan> quotient_fan;
};

/// Smallest face of `chart_image` containing pi(gamma).
Cone orbit_image(const Cone& gamma, const Cone& chart_image, const LatticeMap& projection);

/// Whether the face-closed set `sublocus` of faces of `chart` is the full preimage of its image.
bool is_saturated(const std::vector<FaceKey>& sublocus, const FaceKey& chart, const Fan& fan,
                  const LatticeMap& projection);

GluedQuotient build_quotient(const SemistableLocus& ss, const SubtorusAction& action, const Fan& fan,
                             Execution ex = Execution::parallel);

/// Recomputes the separatedness criterion from the chart images and gluings.
bool is_separated(const GluedQuotient& q);

}  // namespace tgit
