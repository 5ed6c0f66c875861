#include "tgit/action.hpp"

#include <algorithm>
#include <functional>

namespace tgit {

SubtorusAction::SubtorusAction(IntMatrix phi) : phi_(std::move(phi)), phi_star_(phi_.transpose()) {
    const std::size_t n = phi_.rows();
    if (tgit::rank(phi_) != phi_.cols()) {
        const IntVector k = kernel_basis(phi_).basis().row(0);
        throw ActionError("action map is not injective: kernel contains " + to_string(k), k);
    }
    std::vector<IntVector> columns;
    for (std::size_t c = 0; c < phi_.cols(); ++c) columns.push_back(phi_.column(c));
    saturated_ = saturate(Sublattice::from_generators(n, columns));
}

bool Linearization::is_canonical() const {
    return std::all_of(shifts.begin(), shifts.end(), [](const IntVector& s) { return is_zero(s); });
}

IntVector Linearization::shift_of(const IntVector& degree, std::size_t d) const {
    IntVector out = zero_vector(d);
    if (shifts.empty()) return out;
    if (shifts.size() != degree.size()) throw std::invalid_argument("Linearization: degree length mismatch");
    for (std::size_t i = 0; i < degree.size(); ++i) {
        if (shifts[i].size() != d) throw std::invalid_argument("Linearization: shift has wrong dimension");
        out = add(out, scale(degree[i], shifts[i]));
    }
    return out;
}

IntVector weight_of(const IntVector& u, const IntVector& degree, const Linearization& lin,
                    const SubtorusAction& action) {
    return add(action.phi_star() * u, lin.shift_of(degree, action.dimension()));
}

namespace {

struct Problem {
    const Fan* fan;
    const SubtorusAction* action;
    std::vector<ToricDivisor> basis;
    IntMatrix shift_map;  // d x k
    bool group_case;
};

IntMatrix shift_matrix(const Linearization& lin, std::size_t k, std::size_t d) {
    if (!lin.shifts.empty() && lin.shifts.size() != k)
        throw std::invalid_argument("Linearization: expected " + std::to_string(k) + " shifts, got " +
                                    std::to_string(lin.shifts.size()));
    IntMatrix out(d, k);
    for (std::size_t i = 0; i < lin.shifts.size(); ++i) {
        if (lin.shifts[i].size() != d)
            throw std::invalid_argument("Linearization: shift " + std::to_string(i) + " has dimension " +
                                        std::to_string(lin.shifts[i].size()) + ", action has " + std::to_string(d));
        for (std::size_t r = 0; r < d; ++r) out(r, i) = lin.shifts[i][r];
    }
    return out;
}

// Degrees in Z^k admitting an invertible section on the chart, as (m, w) generators.
std::vector<InvertibleSection> invertible_degrees(const Problem& p, const FaceKey& tau) {
    const Fan& fan = *p.fan;
    const std::size_t k = p.basis.size();
    const std::size_t n = fan.lattice_rank();
    const std::size_t d = p.action->dimension();
    std::vector<IntVector> equations;
    for (std::size_t rho : tau) {
        IntVector e = zero_vector(k + n);
        for (std::size_t i = 0; i < k; ++i) e[i] = p.basis[i].coefficients[rho];
        for (std::size_t c = 0; c < n; ++c) e[k + c] = fan.rays()[rho][c];
        equations.push_back(std::move(e));
    }
    for (std::size_t r = 0; r < d; ++r) {
        IntVector e = zero_vector(k + n);
        for (std::size_t i = 0; i < k; ++i) e[i] = p.shift_map(r, i);
        for (std::size_t c = 0; c < n; ++c) e[k + c] = p.action->phi_star()(r, c);
        equations.push_back(std::move(e));
    }
    const auto kernel = kernel_basis(IntMatrix::from_rows(equations, k + n));
    std::vector<InvertibleSection> out;
    for (const auto& v : kernel.basis().row_vectors())
        out.push_back({IntVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k)),
                       IntVector(v.begin() + static_cast<std::ptrdiff_t>(k), v.end())});
    return out;
}

Integer lattice_index(const std::vector<InvertibleSection>& gens, std::size_t k) {
    if (k == 0) return 1;
    std::vector<IntVector> rows;
    for (const auto& g : gens) rows.push_back(g.degree);
    const auto snf = smith_normal_form(IntMatrix::from_rows(rows, k));
    if (snf.rank() < k) return 0;
    Integer index = 1;
    for (const auto& f : snf.invariant_factors()) index *= f;
    return index;
}

std::optional<SemistabilityCertificate> certify(const Problem& p, const FaceKey& tau, bool& guard_rejected) {
    const Fan& fan = *p.fan;
    SemistabilityCertificate cert;
    cert.cone = tau;
    cert.group_case = p.group_case;
    for (const auto& d : p.basis) {
        auto m = is_cartier_on(d, fan, tau);
        if (!m) return std::nullopt;
        cert.cartier_data.push_back(std::move(*m));
    }
    if (p.group_case) {
        cert.invertibles = invertible_degrees(p, tau);
        cert.index = lattice_index(cert.invertibles, p.basis.size());
        if (cert.index == 0) return std::nullopt;
    }

    ChartSystemRequest req;
    req.fan = &fan;
    req.tau = tau;
    req.degree_basis = p.basis;
    req.weight_map = p.action->phi_star();
    req.shift_map = p.shift_map;
    req.positive_degree = !p.group_case;
    const ChartSystem cs = chart_witness_system(req);
    const auto w = feasible_strict(cs.system);
    if (!w) return std::nullopt;
    if (!affineness_guard(fan, tau)) {
        guard_rejected = true;
        return std::nullopt;
    }
    cert.degree = cs.degree_of(*w);
    for (std::size_t i = 0; i < cs.monomial_count; ++i) cert.monomials.push_back({cs.monomial_rays[i], cs.monomial_of(*w, i)});
    return cert;
}

SemistableLocus run(const Problem& p, Execution ex) {
    const Fan& fan = *p.fan;
    const auto& faces = fan.faces();
    std::vector<std::optional<SemistabilityCertificate>> found(faces.size());
    std::vector<char> rejected(faces.size(), 0);
    detail::for_each_index(faces.size(), ex, [&](std::size_t i) {
        bool guard = false;
        found[i] = certify(p, faces[i].key, guard);
        rejected[i] = guard;
    });

    SemistableLocus out;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        if (found[i]) out.locus.insert_with_faces(fan, faces[i].key);
        if (rejected[i]) out.guard_rejections.push_back(faces[i].key);
    }
    for (const auto& key : out.locus.maximal_elements(fan)) out.certificates.emplace(key, *found[fan.face_index(key)]);
    return out;
}

void check_affine(const Fan& fan) {
    if (fan.maximal_cones().size() != 1)
        throw NotAffine("fan has " + std::to_string(fan.maximal_cones().size()) +
                        " maximal cones; an affine toric variety is required");
}

void check_compatible(const SubtorusAction& action, const Fan& fan) {
    if (action.lattice_rank() != fan.lattice_rank())
        throw std::invalid_argument("action acts on a rank " + std::to_string(action.lattice_rank()) +
                                    " lattice, fan has rank " + std::to_string(fan.lattice_rank()));
}

}  // namespace

SemistableLocus semistable_divisor(const ToricDivisor& d, const Linearization& lin, const SubtorusAction& action,
                                   const Fan& fan, Execution ex) {
    check_compatible(action, fan);
    if (d.coefficients.size() != fan.ray_count()) throw std::invalid_argument("divisor has wrong coefficient count");
    return run({&fan, &action, {d}, shift_matrix(lin, 1, action.dimension()), false}, ex);
}

SemistableLocus semistable_group(const DivisorGroup& group, const Linearization& lin, const SubtorusAction& action,
                                 const Fan& fan, Execution ex) {
    check_compatible(action, fan);
    for (const auto& d : group.basis())
        if (d.coefficients.size() != fan.ray_count()) throw std::invalid_argument("divisor has wrong coefficient count");
    return run({&fan, &action, group.basis(), shift_matrix(lin, group.rank(), action.dimension()), true}, ex);
}

SemistableLocus mumford_trivial_semistable(const IntVector& chi, const SubtorusAction& action, const Fan& fan,
                                           Execution ex) {
    check_compatible(action, fan);
    check_affine(fan);
    const std::size_t d = action.dimension();
    const IntVector shift = chi.empty() ? zero_vector(d) : chi;
    if (shift.size() != d) throw std::invalid_argument("character has dimension " + std::to_string(chi.size()));
    const ToricDivisor trivial{zero_vector(fan.ray_count())};
    return run({&fan, &action, {trivial}, shift_matrix({{negate(shift)}}, 1, d), false}, ex);
}

Cone achievable_weights(const FaceKey& gamma, const SubtorusAction& action, const Fan& fan) {
    check_compatible(action, fan);
    check_affine(fan);
    std::vector<IntVector> perp;
    for (std::size_t rho : gamma) perp.push_back(fan.rays()[rho]);
    const Cone sections = Cone::from_inequalities(fan.lattice_rank(), fan.rays(), perp);
    return image(sections, LatticeMap(action.phi_star()));
}

namespace {

IntVector sign_normalized(IntVector v) {
    v = primitive(v);
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0) v = negate(v);
        break;
    }
    return v;
}

}  // namespace

std::vector<Chamber> git_chambers(const SubtorusAction& action, const Fan& fan, Execution ex) {
    check_compatible(action, fan);
    check_affine(fan);
    const std::size_t d = action.dimension();

    std::vector<Cone> ks(fan.faces().size());
    detail::for_each_index(ks.size(), ex,
                           [&](std::size_t i) { ks[i] = achievable_weights(fan.faces()[i].key, action, fan); });
    std::set<IntVector> planes;
    for (const auto& k : ks) {
        for (const auto& f : k.facet_normals()) planes.insert(sign_normalized(f));
        for (const auto& e : k.equations()) planes.insert(sign_normalized(e));
    }
    const std::vector<IntVector> hyperplanes(planes.begin(), planes.end());
    const Cone support = achievable_weights({}, action, fan);

    // Depth-first refinement by the sign of each hyperplane.
    struct Cell {
        FeasibilitySystem system;
        IntVector sample;
    };
    std::vector<Cell> cells;
    FeasibilitySystem root;
    root.dimension = d;
    std::function<void(std::size_t, FeasibilitySystem&)> refine = [&](std::size_t i, FeasibilitySystem& sys) {
        if (i == hyperplanes.size()) {
            auto p = feasible_strict(sys);
            if (p && support.contains(*p)) cells.push_back({sys, *p});
            return;
        }
        const IntVector& h = hyperplanes[i];
        for (int sign : {-1, 0, 1}) {
            FeasibilitySystem next = sys;
            if (sign == 0) next.equalities.push_back(h);
            else next.strict_inequalities.push_back(sign > 0 ? h : negate(h));
            if (feasible_strict(next)) refine(i + 1, next);
        }
    };
    refine(0, root);

    std::vector<Chamber> out(cells.size());
    detail::for_each_index(cells.size(), ex, [&](std::size_t i) {
        const auto& sys = cells[i].system;
        out[i].cone = Cone::from_inequalities(d, sys.strict_inequalities, sys.equalities);
        out[i].sample = cells[i].sample;
        out[i].locus = mumford_trivial_semistable(cells[i].sample, action, fan, Execution::serial);
    });
    std::sort(out.begin(), out.end(), [](const Chamber& a, const Chamber& b) {
        if (a.cone.dimension() != b.cone.dimension()) return a.cone.dimension() < b.cone.dimension();
        return a.sample < b.sample;
    });
    return out;
}

ObstructionReport obstruction_report(const SubfanLocus& required, const SubtorusAction& action, const Fan& fan,
                                     Execution ex) {
    check_compatible(action, fan);
    check_affine(fan);
    ObstructionReport out;
    out.required = required;
    for (const auto& gamma : required.maximal_elements(fan)) out.achievable.emplace_back(gamma, achievable_weights(gamma, action, fan));
    out.common = Cone::whole_space(action.dimension());
    for (std::size_t i = 0; i < out.achievable.size(); ++i) {
        out.common = intersect(out.common, out.achievable[i].second);
        for (std::size_t j = i + 1; j < out.achievable.size(); ++j)
            out.pairwise.push_back({{out.achievable[i].first, out.achievable[j].first},
                                    intersect(out.achievable[i].second, out.achievable[j].second)});
    }
    out.at_zero = mumford_trivial_semistable(zero_vector(action.dimension()), action, fan, ex);
    out.obstructed = out.common.is_zero() && out.at_zero.locus != required;
    for (const auto& c : git_chambers(action, fan, ex))
        if (c.locus.locus == required) {
            out.realizing_character = c.sample;
            break;
        }
    return out;
}

}  // namespace tgit
