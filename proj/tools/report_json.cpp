#include "report_json.hpp"

#include <cstdint>
#include <limits>
#include <sstream>

#ifndef TGIT_VERSION
#define TGIT_VERSION "unknown"
#endif

namespace tgit::cli {

std::string version_string() { return std::string("tgit ") + TGIT_VERSION; }

Json to_json(const Integer& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return x.convert_to<std::int64_t>();
    return x.str();
}

Json to_json(const IntVector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

Json face_json(const FaceKey& key) {
    Json out = Json::array();
    for (std::size_t i : key) out.push_back(i);
    return out;
}

Json locus_json(const SubfanLocus& locus) {
    Json out = Json::array();
    for (const auto& f : locus.faces()) out.push_back(face_json(f));
    return out;
}

Json cone_json(const Cone& c) {
    Json out;
    out["dimension"] = c.dimension();
    Json rays = Json::array();
    for (const auto& r : c.rays()) rays.push_back(to_json(r));
    out["rays"] = rays;
    Json lin = Json::array();
    for (const auto& l : c.lineality()) lin.push_back(to_json(l));
    out["lineality"] = lin;
    return out;
}

Json certificate_json(const SemistabilityCertificate& cert) {
    Json out;
    out["cone"] = face_json(cert.cone);
    out["kind"] = cert.group_case ? "group" : "divisor";
    out["degree"] = to_json(cert.degree);
    Json monos = Json::array();
    for (const auto& m : cert.monomials) monos.push_back(to_json(m.exponent));
    out["section"] = monos;
    Json cartier = Json::array();
    for (const auto& m : cert.cartier_data) cartier.push_back(to_json(m));
    out["cartier_data"] = cartier;
    if (cert.group_case) {
        Json inv = Json::array();
        for (const auto& s : cert.invertibles) inv.push_back({{"degree", to_json(s.degree)}, {"exponent", to_json(s.exponent)}});
        out["invertibles"] = inv;
        out["index"] = to_json(cert.index);
    }
    return out;
}

Json semistable_json(const SemistableLocus& ss) {
    Json out;
    out["locus"] = locus_json(ss.locus);
    Json certs = Json::array();
    for (const auto& [key, cert] : ss.certificates) certs.push_back(certificate_json(cert));
    out["certificates"] = certs;
    if (!ss.guard_rejections.empty()) {
        Json g = Json::array();
        for (const auto& k : ss.guard_rejections) g.push_back(face_json(k));
        out["guard_rejections"] = g;
    }
    return out;
}

Json check_json(const CheckResult& r) {
    Json out;
    out["ok"] = r.ok();
    out["failures"] = r.failures;
    return out;
}

Json fan_json(const Fan& fan) {
    Json out;
    out["lattice_rank"] = fan.lattice_rank();
    Json rays = Json::array();
    for (const auto& r : fan.rays()) rays.push_back(to_json(r));
    out["rays"] = rays;
    Json cones = Json::array();
    for (const auto& c : fan.maximal_cones()) cones.push_back(face_json(c));
    out["cones"] = cones;
    out["complete"] = fan.is_complete();
    return out;
}

Json quotient_json(const GluedQuotient& q) {
    Json out;
    Json proj = Json::array();
    for (const auto& row : q.projection.matrix.row_vectors()) proj.push_back(to_json(row));
    out["projection"] = proj;
    out["torsion"] = to_json(q.torsion);
    Json charts = Json::array();
    for (const auto& c : q.charts) charts.push_back({{"source", face_json(c.source)}, {"image", cone_json(c.image)}});
    out["charts"] = charts;
    Json gluings = Json::array();
    for (const auto& g : q.gluings)
        gluings.push_back({{"charts", {g.first, g.second}},
                           {"common", face_json(g.common)},
                           {"image", cone_json(g.image)},
                           {"image_meet", cone_json(g.image_meet)}});
    out["gluings"] = gluings;
    Json orbits = Json::array();
    for (const auto& o : q.orbit_map)
        orbits.push_back({{"face", face_json(o.face)}, {"chart", o.chart}, {"image", cone_json(o.image)}});
    out["orbit_map"] = orbits;
    out["good"] = q.good;
    out["geometric"] = q.geometric;
    out["separated"] = q.separated;
    out["quotient_fan"] = q.quotient_fan ? fan_json(*q.quotient_fan) : Json();
    out["diagnostics"] = q.diagnostics;
    return out;
}

Json class_group_json(const ClassGroup& cg) {
    Json out;
    out["class_group"] = {{"rank", cg.rank}, {"torsion", to_json(cg.torsion)}};
    out["torus_factor_rank"] = cg.torus_factor_rank;
    out["picard_group"] = {{"rank", cg.picard_rank}, {"torsion", to_json(cg.picard_torsion)}};
    return out;
}

Json envelope(const std::string& command, const std::string& digest, Json result) {
    Json out;
    out["command"] = command;
    out["input_digest"] = digest.empty() ? Json() : Json("fnv1a64:" + digest);
    out["version"] = version_string();
    out["result"] = std::move(result);
    return out;
}

namespace {

bool is_flat(const Json& v) {
    if (!v.is_array()) return !v.is_object();
    for (const auto& x : v)
        if (!x.is_primitive() && !(x.is_array() && is_flat(x))) return false;
    return true;
}

void render(const Json& v, const std::string& indent, std::ostringstream& out) {
    for (const auto& [key, value] : v.items()) {
        out << indent << key << ":";
        if (value.is_null()) out << " none\n";
        else if (is_flat(value)) out << " " << value.dump() << "\n";
        else {
            out << "\n";
            if (value.is_array()) {
                for (const auto& item : value) {
                    if (is_flat(item)) out << indent << "  - " << item.dump() << "\n";
                    else {
                        out << indent << "  -\n";
                        render(item, indent + "    ", out);
                    }
                }
            } else {
                render(value, indent + "  ", out);
            }
        }
    }
}

}  // namespace

std::string render_text(const Json& body) {
    std::ostringstream out;
    render(body, "", out);
    return out.str();
}

}  // namespace tgit::cli
