#include "tgit/cone.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tgit {

namespace {

struct TrackedRay {
    IntVector v;
    boost::dynamic_bitset<> tight;  // processed inequalities vanishing on v
};

IntVector combine(const Integer& a, const IntVector& x, const Integer& b, const IntVector& y) {
    IntVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] - b * y[i];
    return primitive(out);
}

std::vector<IntVector> canonical_subspace_basis(std::size_t n, const std::vector<IntVector>& spanning) {
    if (spanning.empty()) return {};
    return saturate(Sublattice::from_generators(n, spanning)).basis().row_vectors();
}

/// Solves G y = rhs over Q for a nonsingular square G.
std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> g, std::vector<Rational> rhs) {
    const std::size_t k = g.size();
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && g[p][c] == 0) ++p;
        if (p == k) throw std::logic_error("solve_rational: singular Gram matrix");
        std::swap(g[p], g[c]);
        std::swap(rhs[p], rhs[c]);
        for (std::size_t i = 0; i < k; ++i) {
            if (i == c || g[i][c] == 0) continue;
            const Rational f = g[i][c] / g[c][c];
            for (std::size_t j = c; j < k; ++j) g[i][j] -= f * g[c][j];
            rhs[i] -= f * rhs[c];
        }
    }
    std::vector<Rational> y(k);
    for (std::size_t i = 0; i < k; ++i) y[i] = rhs[i] / g[i][i];
    return y;
}

/// Orthogonal projection of v onto the complement of span(basis), scaled to a
/// primitive integer vector.
IntVector project_off(const IntVector& v, const std::vector<IntVector>& basis) {
    if (basis.empty()) return primitive(v);
    const std::size_t k = basis.size();
    std::vector<std::vector<Rational>> gram(k, std::vector<Rational>(k));
    std::vector<Rational> rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = Rational(dot(basis[i], basis[j]));
        rhs[i] = Rational(dot(basis[i], v));
    }
    const auto y = solve_rational(std::move(gram), std::move(rhs));
    std::vector<Rational> w(v.size());
    for (std::size_t c = 0; c < v.size(); ++c) {
        w[c] = Rational(v[c]);
        for (std::size_t i = 0; i < k; ++i) w[c] -= y[i] * Rational(basis[i][c]);
    }
    Integer common = 1;
    for (const auto& x : w) {
        const Integer den = boost::multiprecision::denominator(x);
        common = boost::multiprecision::lcm(common, den);
    }
    IntVector out(v.size());
    for (std::size_t c = 0; c < v.size(); ++c)
        out[c] = boost::multiprecision::numerator(w[c] * Rational(common));
    return primitive(out);
}

std::vector<IntVector> canonical_rays(const std::vector<IntVector>& rays, const std::vector<IntVector>& off) {
    std::vector<IntVector> out;
    for (const auto& r : rays) {
        IntVector p = project_off(r, off);
        if (!is_zero(p)) out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<IntVector> with_both_signs(const std::vector<IntVector>& a, const std::vector<IntVector>& b) {
    std::vector<IntVector> out = a;
    for (const auto& v : b) {
        out.push_back(v);
        out.push_back(negate(v));
    }
    return out;
}

}  // namespace

ConeGenerators double_description(std::size_t dim, const std::vector<IntVector>& inequalities) {
    std::vector<IntVector> lin;
    for (std::size_t i = 0; i < dim; ++i) {
        IntVector e = zero_vector(dim);
        e[i] = 1;
        lin.push_back(std::move(e));
    }
    std::vector<TrackedRay> rays;

    for (std::size_t k = 0; k < inequalities.size(); ++k) {
        const IntVector& a = inequalities[k];
        if (a.size() != dim) throw std::invalid_argument("double_description: inequality dimension mismatch");

        auto pivot = std::find_if(lin.begin(), lin.end(), [&](const IntVector& l) { return dot(a, l) != 0; });
        if (pivot != lin.end()) {
            // The new inequality cuts the lineality space: split off one
            // direction as a ray, project everything else into a^⊥.
            IntVector l = *pivot;
            Integer alpha = dot(a, l);
            if (alpha < 0) {
                l = negate(l);
                alpha = -alpha;
            }
            std::vector<IntVector> next_lin;
            for (auto it = lin.begin(); it != lin.end(); ++it) {
                if (it == pivot) continue;
                next_lin.push_back(combine(alpha, *it, dot(a, *it), l));
            }
            for (auto& r : rays) {
                r.v = combine(alpha, r.v, dot(a, r.v), l);
                r.tight.push_back(true);
            }
            TrackedRay fresh{l, boost::dynamic_bitset<>(k + 1)};
            fresh.tight.set();
            fresh.tight.reset(k);
            rays.push_back(std::move(fresh));
            lin = std::move(next_lin);
            continue;
        }

        std::vector<Integer> value(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) value[i] = dot(a, rays[i].v);

        std::vector<TrackedRay> next;
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (value[i] > 0) pos.push_back(i);
            else if (value[i] < 0) neg.push_back(i);
        }
        for (std::size_t p : pos)
            for (std::size_t q : neg) {
                const auto common = rays[p].tight & rays[q].tight;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q) continue;
                    if (common.is_subset_of(rays[r].tight)) adjacent = false;
                }
                if (!adjacent) continue;
                TrackedRay fresh{combine(value[p], rays[q].v, value[q], rays[p].v), common};
                fresh.tight.push_back(true);
                next.push_back(std::move(fresh));
            }
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (value[i] < 0) continue;
            TrackedRay kept = std::move(rays[i]);
            kept.tight.push_back(value[i] == 0);
            next.push_back(std::move(kept));
        }
        rays = std::move(next);
    }

    ConeGenerators out;
    out.lineality = std::move(lin);
    for (auto& r : rays) out.rays.push_back(std::move(r.v));
    return out;
}

// ---------------------------------------------------------------- Cone

Cone Cone::assemble(std::size_t n, const ConeGenerators& primal, const ConeGenerators& dual) {
    Cone c;
    c.ambient_rank_ = n;
    c.lineality_ = canonical_subspace_basis(n, primal.lineality);
    c.equations_ = canonical_subspace_basis(n, dual.lineality);
    c.rays_ = canonical_rays(primal.rays, c.lineality_);
    c.facets_ = canonical_rays(dual.rays, c.equations_);
    return c;
}

Cone Cone::from_generators(std::size_t n, const std::vector<IntVector>& generators,
                           const std::vector<IntVector>& lineality) {
    const auto dual_gens = double_description(n, with_both_signs(generators, lineality));
    const auto primal = double_description(n, with_both_signs(dual_gens.rays, dual_gens.lineality));
    return assemble(n, primal, dual_gens);
}

Cone Cone::from_inequalities(std::size_t n, const std::vector<IntVector>& inequalities,
                             const std::vector<IntVector>& equations) {
    const auto primal = double_description(n, with_both_signs(inequalities, equations));
    const auto dual_gens = double_description(n, with_both_signs(primal.rays, primal.lineality));
    return assemble(n, primal, dual_gens);
}

Cone Cone::zero(std::size_t n) { return from_generators(n, {}); }

Cone Cone::whole_space(std::size_t n) { return from_inequalities(n, {}); }

std::vector<IntVector> Cone::generators() const { return with_both_signs(rays_, lineality_); }

std::vector<IntVector> Cone::inequalities() const { return with_both_signs(facets_, equations_); }

bool Cone::contains(const IntVector& x) const {
    for (const auto& e : equations_)
        if (dot(e, x) != 0) return false;
    for (const auto& f : facets_)
        if (dot(f, x) < 0) return false;
    return true;
}

bool Cone::contains_in_relative_interior(const IntVector& x) const {
    for (const auto& e : equations_)
        if (dot(e, x) != 0) return false;
    for (const auto& f : facets_)
        if (dot(f, x) <= 0) return false;
    return true;
}

Cone Cone::dual() const {
    Cone d;
    d.ambient_rank_ = ambient_rank_;
    d.rays_ = facets_;
    d.lineality_ = equations_;
    d.facets_ = rays_;
    d.equations_ = lineality_;
    return d;
}

std::string Cone::to_string() const {
    std::ostringstream os;
    os << "cone(";
    for (std::size_t i = 0; i < rays_.size(); ++i) os << (i ? "," : "") << tgit::to_string(rays_[i]);
    if (!lineality_.empty()) {
        os << "; lin ";
        for (std::size_t i = 0; i < lineality_.size(); ++i) os << (i ? "," : "") << tgit::to_string(lineality_[i]);
    }
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------- faces

namespace {

ConeFace make_face(const Cone& c, std::vector<std::size_t> ray_indices) {
    std::vector<IntVector> gens;
    for (std::size_t i : ray_indices) gens.push_back(c.rays()[i]);
    IntVector normal = zero_vector(c.ambient_rank());
    if (ray_indices.size() != c.rays().size()) {
        for (const auto& f : c.facet_normals()) {
            bool vanishes = true;
            for (std::size_t i : ray_indices)
                if (dot(f, c.rays()[i]) != 0) {
                    vanishes = false;
                    break;
                }
            if (vanishes) normal = add(normal, f);
        }
    }
    return {Cone::from_generators(c.ambient_rank(), gens, c.lineality()), std::move(normal), std::move(ray_indices)};
}

}  // namespace

std::vector<ConeFace> faces(const Cone& c) {
    const std::size_t nr = c.rays().size();
    std::vector<std::vector<std::size_t>> found;
    std::vector<std::size_t> all(nr);
    for (std::size_t i = 0; i < nr; ++i) all[i] = i;
    found.push_back(all);
    for (std::size_t head = 0; head < found.size(); ++head) {
        for (const auto& f : c.facet_normals()) {
            std::vector<std::size_t> sub;
            for (std::size_t i : found[head])
                if (dot(f, c.rays()[i]) == 0) sub.push_back(i);
            if (std::find(found.begin(), found.end(), sub) == found.end()) found.push_back(std::move(sub));
        }
    }
    std::vector<ConeFace> out;
    out.reserve(found.size());
    for (auto& s : found) out.push_back(make_face(c, std::move(s)));
    std::sort(out.begin(), out.end(), [](const ConeFace& a, const ConeFace& b) {
        if (a.cone.dimension() != b.cone.dimension()) return a.cone.dimension() < b.cone.dimension();
        return a.ray_indices < b.ray_indices;
    });
    return out;
}

ConeFace smallest_face_containing(const Cone& c, const IntVector& x) {
    if (!c.contains(x)) throw std::invalid_argument("smallest_face_containing: point not in cone");
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < c.rays().size(); ++i) {
        bool on_all = true;
        for (const auto& f : c.facet_normals())
            if (dot(f, x) == 0 && dot(f, c.rays()[i]) != 0) {
                on_all = false;
                break;
            }
        if (on_all) indices.push_back(i);
    }
    return make_face(c, std::move(indices));
}

IntVector relative_interior_point(const Cone& c) {
    IntVector p = zero_vector(c.ambient_rank());
    for (const auto& r : c.rays()) p = add(p, r);
    return p;
}

Cone image(const Cone& c, const LatticeMap& f) {
    if (f.source_rank != c.ambient_rank()) throw std::invalid_argument("image: dimension mismatch");
    std::vector<IntVector> rays, lin;
    for (const auto& r : c.rays()) rays.push_back(f.apply(r));
    for (const auto& l : c.lineality()) lin.push_back(f.apply(l));
    return Cone::from_generators(f.target_rank, rays, lin);
}

Cone intersect(const Cone& a, const Cone& b) {
    if (a.ambient_rank() != b.ambient_rank()) throw std::invalid_argument("intersect: dimension mismatch");
    std::vector<IntVector> ineq = a.facet_normals();
    ineq.insert(ineq.end(), b.facet_normals().begin(), b.facet_normals().end());
    std::vector<IntVector> eq = a.equations();
    eq.insert(eq.end(), b.equations().begin(), b.equations().end());
    return Cone::from_inequalities(a.ambient_rank(), ineq, eq);
}

// ---------------------------------------------------------------- feasibility

std::optional<IntVector> feasible_strict(const FeasibilitySystem& sys) {
    const std::size_t n = sys.dimension;
    auto check_dim = [n](const std::vector<IntVector>& forms) {
        for (const auto& f : forms)
            if (f.size() != n) throw std::invalid_argument("feasible_strict: form dimension mismatch");
    };
    check_dim(sys.equalities);
    check_dim(sys.weak_inequalities);
    check_dim(sys.strict_inequalities);

    // Parametrize the solution lattice of the equalities: x = K^T y.
    const IntMatrix k = sys.equalities.empty() ? IntMatrix::identity(n)
                                               : kernel_basis(IntMatrix::from_rows(sys.equalities, n)).basis();
    auto pull_back = [&k](const std::vector<IntVector>& forms) {
        std::vector<IntVector> out;
        out.reserve(forms.size());
        for (const auto& f : forms) out.push_back(k * f);
        return out;
    };
    std::vector<IntVector> relaxed = pull_back(sys.weak_inequalities);
    const std::vector<IntVector> strict = pull_back(sys.strict_inequalities);
    relaxed.insert(relaxed.end(), strict.begin(), strict.end());

    const auto gens = double_description(k.rows(), relaxed);
    IntVector p = zero_vector(k.rows());
    for (const auto& r : gens.rays) p = add(p, r);
    for (const auto& s : strict)
        if (dot(s, p) <= 0) return std::nullopt;
    return primitive(k.transpose() * p);
}

}  // namespace tgit
