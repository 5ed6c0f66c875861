// Random fans, actions and divisors for the property and acceptance suites.
#pragma once

#include "random.hpp"
#include "tgit/action.hpp"
#include "tgit/toric.hpp"

#include <algorithm>
#include <cmath>

namespace tgit::testing {

/// A subfan of the face poset of a random pointed cone.
inline Fan random_cone_fan(Random& rng, std::size_t max_rank = 3, std::size_t max_rays = 6) {
    for (;;) {
        const std::size_t n = rng.uniform(1, static_cast<long long>(max_rank));
        std::vector<IntVector> gens;
        for (long long g = rng.uniform(1, static_cast<long long>(max_rays)); g > 0; --g) gens.push_back(rng.vector(n, -2, 2));
        const Cone c = Cone::from_generators(n, gens);
        if (!c.is_pointed() || c.rays().empty() || c.rays().size() > max_rays) continue;
        const auto fs = faces(c);
        std::vector<FaceKey> cones{fs.back().ray_indices};
        if (rng.uniform(0, 2) == 0) {
            cones.clear();
            for (const auto& f : fs)
                if (rng.coin()) cones.push_back(f.ray_indices);
            for (std::size_t i = 0; i < c.rays().size(); ++i) cones.push_back({i});
        }
        return Fan::validate({n, c.rays(), cones});
    }
}

/// Rank-2 fan from rays sorted by angle; consecutive pairs below a half turn become cones.
inline Fan random_planar_fan(Random& rng, std::size_t max_rays = 6) {
    for (;;) {
        std::vector<IntVector> rays;
        for (long long g = rng.uniform(2, static_cast<long long>(max_rays)); g > 0; --g) {
            IntVector v = rng.vector(2, -3, 3);
            if (is_zero(v)) continue;
            v = primitive(v);
            if (std::find(rays.begin(), rays.end(), v) == rays.end()) rays.push_back(v);
        }
        if (rays.size() < 2) continue;
        auto angle = [](const IntVector& v) { return std::atan2(v[1].convert_to<double>(), v[0].convert_to<double>()); };
        std::sort(rays.begin(), rays.end(), [&](const IntVector& a, const IntVector& b) { return angle(a) < angle(b); });
        std::vector<FaceKey> cones;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            const std::size_t j = (i + 1) % rays.size();
            if (j == i) continue;
            const Integer det = rays[i][0] * rays[j][1] - rays[i][1] * rays[j][0];
            if (det > 0 && rng.uniform(0, 3) != 0) cones.push_back({std::min(i, j), std::max(i, j)});
            else cones.push_back({i});
        }
        for (std::size_t i = 0; i < rays.size(); ++i) cones.push_back({i});
        return Fan::validate({2, rays, cones});
    }
}

inline Fan random_fan(Random& rng) { return rng.uniform(0, 3) == 0 ? random_planar_fan(rng) : random_cone_fan(rng); }

inline SubtorusAction random_action(Random& rng, std::size_t n, std::size_t max_d = 2) {
    for (;;) {
        const std::size_t d = rng.uniform(0, static_cast<long long>(std::min(max_d, n)));
        IntMatrix phi = rng.matrix(n, d, -3, 3);
        if (rank(phi) == d) return SubtorusAction(std::move(phi));
    }
}

inline ToricDivisor random_divisor(Random& rng, const Fan& fan, bool nonzero = true) {
    for (;;) {
        ToricDivisor d{rng.vector(fan.ray_count(), -3, 3)};
        if (!nonzero || !is_zero(d.coefficients)) return d;
    }
}

inline Linearization random_linearization(Random& rng, std::size_t k, std::size_t d) {
    Linearization lin;
    for (std::size_t i = 0; i < k; ++i) lin.shifts.push_back(rng.coin() ? zero_vector(d) : rng.vector(d, -3, 3));
    return lin;
}

struct Instance {
    Fan fan;
    SubtorusAction action;
    ToricDivisor divisor;
    Linearization lin;
};

inline Instance random_instance(Random& rng) {
    Fan fan = random_fan(rng);
    SubtorusAction action = random_action(rng, fan.lattice_rank());
    ToricDivisor d = random_divisor(rng, fan);
    Linearization lin = random_linearization(rng, 1, action.dimension());
    return {std::move(fan), std::move(action), std::move(d), std::move(lin)};
}

}  // namespace tgit::testing
