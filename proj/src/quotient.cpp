#include "tgit/quotient.hpp"

#include <algorithm>

namespace tgit {

Cone orbit_image(const Cone& gamma, const Cone& chart_image, const LatticeMap& projection) {
    return smallest_face_containing(chart_image, projection.apply(relative_interior_point(gamma))).cone;
}

bool is_saturated(const std::vector<FaceKey>& sublocus, const FaceKey& chart, const Fan& fan,
                  const LatticeMap& projection) {
    const Cone image_cone = image(fan.cone(chart), projection);
    std::vector<Cone> hit;
    for (const auto& g : sublocus) hit.push_back(orbit_image(fan.cone(g), image_cone, projection));
    for (const auto& g : fan.faces_of(chart)) {
        if (std::find(sublocus.begin(), sublocus.end(), g) != sublocus.end()) continue;
        const Cone f = orbit_image(fan.cone(g), image_cone, projection);
        if (std::find(hit.begin(), hit.end(), f) != hit.end()) return false;
    }
    return true;
}

namespace {

FaceKey common_face(const FaceKey& a, const FaceKey& b) {
    FaceKey out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_face_of(const Cone& f, const Cone& c) {
    const auto fs = faces(c);
    return std::any_of(fs.begin(), fs.end(), [&](const ConeFace& x) { return x.cone == f; });
}

// Fan of the chart images modulo their common lineality space.
std::optional<Fan> assemble_fan(const GluedQuotient& q, std::vector<std::string>& diagnostics) {
    if (q.charts.empty()) return std::nullopt;
    const std::size_t m = q.projection.target_rank;
    const auto& lineality = q.charts.front().image.lineality();
    for (const auto& c : q.charts)
        if (c.image.lineality() != lineality) {
            diagnostics.push_back("chart images have different lineality spaces; no quotient fan assembled");
            return std::nullopt;
        }
    const auto reduce = cokernel_projection(Sublattice::from_generators(m, lineality)).projection;
    std::vector<IntVector> rays;
    std::vector<std::vector<IntVector>> chart_rays;
    for (const auto& c : q.charts) {
        const Cone reduced = image(c.image, reduce);
        chart_rays.push_back(reduced.rays());
        rays.insert(rays.end(), reduced.rays().begin(), reduced.rays().end());
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    RawFan raw{reduce.target_rank, rays, {}};
    for (const auto& cr : chart_rays) {
        FaceKey key;
        for (const auto& r : cr) key.push_back(std::lower_bound(rays.begin(), rays.end(), r) - rays.begin());
        std::sort(key.begin(), key.end());
        raw.cones.push_back(std::move(key));
    }
    try {
        return Fan::validate(raw);
    } catch (const FanError& e) {
        diagnostics.push_back(std::string("quotient charts do not form a fan: ") + e.what());
        return std::nullopt;
    }
}

}  // namespace

bool is_separated(const GluedQuotient& q) {
    for (const auto& g : q.gluings) {
        if (g.image_meet != g.image) return false;
        if (!is_face_of(g.image, q.charts[g.first].image) || !is_face_of(g.image, q.charts[g.second].image))
            return false;
    }
    return true;
}

GluedQuotient build_quotient(const SemistableLocus& ss, const SubtorusAction& action, const Fan& fan, Execution ex) {
    if (action.lattice_rank() != fan.lattice_rank()) throw std::invalid_argument("action and fan ranks differ");
    GluedQuotient q;
    const auto coker = cokernel_projection(action.saturated_image());
    q.projection = coker.projection;
    for (const auto& f : smith_normal_form(action.phi()).invariant_factors())
        if (f > 1) q.torsion.push_back(f);
    if (!q.torsion.empty()) {
        std::string t;
        for (const auto& f : q.torsion) t += (t.empty() ? "" : ", ") + f.str();
        q.diagnostics.push_back("TorsionWarning: N / im(phi) has torsion factors " + t +
                                " (finite isotropy); charts use the free part");
    }

    const std::size_t n = fan.lattice_rank();
    const std::size_t l = action.saturated_image().rank();
    for (const auto& [key, cert] : ss.certificates) q.charts.push_back({key, image(fan.cone(key), q.projection)});

    // Orbit map and the geometricity test, chart by chart.
    std::vector<std::vector<OrbitImage>> per_chart(q.charts.size());
    std::vector<std::vector<std::string>> notes(q.charts.size());
    std::vector<char> geometric(q.charts.size(), 1);
    detail::for_each_index(q.charts.size(), ex, [&](std::size_t i) {
        const auto& chart = q.charts[i];
        std::vector<std::pair<Cone, int>> hits;
        for (auto& f : faces(chart.image)) hits.emplace_back(std::move(f.cone), 0);
        for (const auto& g : fan.faces_of(chart.source)) {
            const Cone& gc = fan.cone(g);
            Cone f = orbit_image(gc, chart.image, q.projection);
            for (auto& h : hits)
                if (h.first == f) ++h.second;
            std::vector<IntVector> span = action.saturated_image().basis().row_vectors();
            for (const auto& r : gc.rays()) span.push_back(r);
            const std::size_t h_orbit = rank(IntMatrix::from_rows(span, n)) - gc.dimension();
            const std::size_t drop = (n - gc.dimension()) - ((n - l) - f.dimension());
            if (h_orbit != drop) {
                geometric[i] = 0;
                notes[i].push_back("chart " + to_string(chart.source) + ": orbit of face " + to_string(g) +
                                   " is not a single fiber (orbit dimension drop " + std::to_string(drop) +
                                   ", subtorus orbit dimension " + std::to_string(h_orbit) + ")");
            }
            per_chart[i].push_back({g, i, std::move(f)});
        }
        for (const auto& [f, count] : hits)
            if (count != 1) {
                geometric[i] = 0;
                notes[i].push_back("chart " + to_string(chart.source) + ": image face " + f.to_string() + " is hit by " +
                                   std::to_string(count) + " orbits");
            }
    });
    for (std::size_t i = 0; i < q.charts.size(); ++i) {
        q.orbit_map.insert(q.orbit_map.end(), per_chart[i].begin(), per_chart[i].end());
        q.diagnostics.insert(q.diagnostics.end(), notes[i].begin(), notes[i].end());
        q.geometric = q.geometric && geometric[i];
    }

    for (std::size_t i = 0; i < q.charts.size(); ++i)
        for (std::size_t j = i + 1; j < q.charts.size(); ++j) {
            Gluing g;
            g.first = i;
            g.second = j;
            g.common = common_face(q.charts[i].source, q.charts[j].source);
            g.image = image(fan.cone(g.common), q.projection);
            g.image_meet = intersect(q.charts[i].image, q.charts[j].image);
            const auto sub = fan.faces_of(g.common);
            if (!is_saturated(sub, q.charts[i].source, fan, q.projection) ||
                !is_saturated(sub, q.charts[j].source, fan, q.projection)) {
                q.good = false;
                q.diagnostics.push_back("charts " + to_string(q.charts[i].source) + " and " +
                                        to_string(q.charts[j].source) + " meet in a non-saturated set");
            }
            q.gluings.push_back(std::move(g));
        }

    q.separated = is_separated(q);
    if (q.separated) q.quotient_fan = assemble_fan(q, q.diagnostics);
    return q;
}

}  // namespace tgit
