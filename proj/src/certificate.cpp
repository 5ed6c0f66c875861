#include "tgit/certificate.hpp"

#include <algorithm>

namespace tgit {

namespace {

IntVector degree_divisor(const std::vector<ToricDivisor>& basis, const IntVector& degree, std::size_t rays) {
    IntVector a = zero_vector(rays);
    for (std::size_t i = 0; i < basis.size(); ++i) a = add(a, scale(degree[i], basis[i].coefficients));
    return a;
}

bool on_chart(const FaceKey& tau, std::size_t rho) { return std::binary_search(tau.begin(), tau.end(), rho); }

}  // namespace

CheckResult check_certificate(const SemistabilityCertificate& cert, const std::vector<ToricDivisor>& basis,
                              const Linearization& lin, const SubtorusAction& action, const Fan& fan) {
    CheckResult r;
    auto fail = [&](std::string clause) { r.failures.push_back(to_string(cert.cone) + ": " + std::move(clause)); };
    const FaceKey& tau = cert.cone;
    const std::size_t k = basis.size();

    if (!fan.has_face(tau)) {
        fail("chart is not a cone of the fan");
        return r;
    }
    if (cert.degree.size() != k) {
        fail("degree has " + std::to_string(cert.degree.size()) + " entries, group rank is " + std::to_string(k));
        return r;
    }
    if (!cert.group_case && (k != 1 || cert.degree[0] <= 0)) fail("degree n must be a positive multiple of D");
    if (cert.monomials.size() != 1) {
        fail("section must be a single monomial, got " + std::to_string(cert.monomials.size()));
        return r;
    }

    const IntVector a = degree_divisor(basis, cert.degree, fan.ray_count());
    std::vector<bool> nonvanishing(fan.ray_count(), false);
    {
        const auto& mono = cert.monomials.front();
        if (mono.exponent.size() != fan.lattice_rank()) {
            fail("monomial exponent has wrong length");
            return r;
        }
        for (std::size_t rho = 0; rho < fan.ray_count(); ++rho) {
            const Integer b = dot(mono.exponent, fan.rays()[rho]) + a[rho];
            if (b < 0) fail("monomial " + to_string(mono.exponent) + " is not a section: order " + b.str() +
                            " along ray " + std::to_string(rho));
            if (b == 0) nonvanishing[rho] = true;
        }
        if (!is_zero(weight_of(mono.exponent, cert.degree, lin, action)))
            fail("monomial " + to_string(mono.exponent) + " is not invariant");
    }
    for (std::size_t rho = 0; rho < fan.ray_count(); ++rho) {
        if (on_chart(tau, rho) && !nonvanishing[rho])
            fail("section vanishes along ray " + std::to_string(rho) + " of the chart");
        if (!on_chart(tau, rho) && nonvanishing[rho])
            fail("section does not vanish along ray " + std::to_string(rho) + " outside the chart");
    }
    // X \ Z(f) is the union of the fan cones with all rays in τ(1); it is affine iff these are the faces of τ.
    const auto own = fan.faces_of(tau);
    for (const auto& f : fan.faces()) {
        const bool inside = std::all_of(f.key.begin(), f.key.end(), [&](std::size_t rho) { return on_chart(tau, rho); });
        if (inside && std::find(own.begin(), own.end(), f.key) == own.end())
            fail("complement of the zero set is not affine: contains " + to_string(f.key));
    }

    if (cert.cartier_data.size() != k) {
        fail("Cartier data missing");
    } else {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t rho : tau)
                if (dot(cert.cartier_data[i], fan.rays()[rho]) != -basis[i].coefficients[rho])
                    fail("basis divisor " + std::to_string(i) + " is not Cartier on the chart at ray " +
                         std::to_string(rho));
    }

    if (cert.group_case) {
        std::vector<IntVector> degrees;
        for (const auto& inv : cert.invertibles) {
            if (inv.degree.size() != k || inv.exponent.size() != fan.lattice_rank()) {
                fail("invertible section has wrong shape");
                continue;
            }
            const IntVector ai = degree_divisor(basis, inv.degree, fan.ray_count());
            for (std::size_t rho : tau)
                if (dot(inv.exponent, fan.rays()[rho]) + ai[rho] != 0)
                    fail("section of degree " + to_string(inv.degree) + " is not invertible at ray " + std::to_string(rho));
            if (!is_zero(weight_of(inv.exponent, inv.degree, lin, action)))
                fail("invertible section of degree " + to_string(inv.degree) + " is not invariant");
            degrees.push_back(inv.degree);
        }
        if (k > 0 && (degrees.empty() || rank(IntMatrix::from_rows(degrees, k)) != k))
            fail("degrees with invertible invariant sections do not have finite index");
    }
    return r;
}

CheckResult check_locus(const SemistableLocus& ss, const std::vector<ToricDivisor>& basis, const Linearization& lin,
                        const SubtorusAction& action, const Fan& fan) {
    CheckResult r;
    if (!ss.locus.is_face_closed(fan)) r.failures.push_back("locus is not face-closed");
    for (const auto& key : ss.locus.maximal_elements(fan)) {
        const auto it = ss.certificates.find(key);
        if (it == ss.certificates.end()) {
            r.failures.push_back(to_string(key) + ": maximal face without certificate");
            continue;
        }
        auto sub = check_certificate(it->second, basis, lin, action, fan);
        r.failures.insert(r.failures.end(), sub.failures.begin(), sub.failures.end());
    }
    for (const auto& [key, cert] : ss.certificates)
        if (!ss.locus.contains(key)) r.failures.push_back(to_string(key) + ": certificate outside the locus");
    return r;
}

}  // namespace tgit
