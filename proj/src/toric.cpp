#include "tgit/toric.hpp"

#include <algorithm>
#include <sstream>

namespace tgit {

std::string to_string(const FaceKey& key) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < key.size(); ++i) os << (i ? "," : "") << key[i];
    os << ']';
    return os.str();
}

const char* to_string(FanErrorKind kind) {
    switch (kind) {
        case FanErrorKind::Empty: return "Empty";
        case FanErrorKind::DimensionMismatch: return "DimensionMismatch";
        case FanErrorKind::NonPrimitiveRay: return "NonPrimitiveRay";
        case FanErrorKind::DuplicateRay: return "DuplicateRay";
        case FanErrorKind::UnusedRay: return "UnusedRay";
        case FanErrorKind::RayIndexOutOfRange: return "RayIndexOutOfRange";
        case FanErrorKind::RedundantRay: return "RedundantRay";
        case FanErrorKind::NotStronglyConvex: return "NotStronglyConvex";
        case FanErrorKind::IntersectionNotFace: return "IntersectionNotFace";
    }
    return "Unknown";
}

namespace {

bool is_subset(const FaceKey& a, const FaceKey& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

FaceKey intersection(const FaceKey& a, const FaceKey& b) {
    FaceKey out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<IntVector> rays_of(const std::vector<IntVector>& rays, const FaceKey& key) {
    std::vector<IntVector> out;
    out.reserve(key.size());
    for (std::size_t i : key) out.push_back(rays[i]);
    return out;
}

}  // namespace

// ---------------------------------------------------------------- Fan

Fan Fan::validate(const RawFan& raw) {
    const std::size_t n = raw.lattice_rank;
    if (raw.cones.empty()) throw FanError(FanErrorKind::Empty, "fan has no cones");

    for (std::size_t i = 0; i < raw.rays.size(); ++i) {
        if (raw.rays[i].size() != n)
            throw FanError(FanErrorKind::DimensionMismatch,
                           "ray " + std::to_string(i) + " has dimension " + std::to_string(raw.rays[i].size()) +
                               ", lattice rank is " + std::to_string(n));
        if (!is_primitive(raw.rays[i]))
            throw FanError(FanErrorKind::NonPrimitiveRay,
                           "ray " + std::to_string(i) + " " + tgit::to_string(raw.rays[i]) + " is not primitive");
    }
    std::map<IntVector, std::size_t> ray_index;
    for (std::size_t i = 0; i < raw.rays.size(); ++i) {
        auto [it, inserted] = ray_index.emplace(raw.rays[i], i);
        if (!inserted)
            throw FanError(FanErrorKind::DuplicateRay,
                           "rays " + std::to_string(it->second) + " and " + std::to_string(i) + " coincide");
    }

    std::vector<FaceKey> listed;
    std::vector<bool> used(raw.rays.size(), false);
    for (std::size_t c = 0; c < raw.cones.size(); ++c) {
        FaceKey key = raw.cones[c];
        for (std::size_t i : key) {
            if (i >= raw.rays.size())
                throw FanError(FanErrorKind::RayIndexOutOfRange,
                               "cone " + std::to_string(c) + " references ray " + std::to_string(i));
            used[i] = true;
        }
        std::sort(key.begin(), key.end());
        key.erase(std::unique(key.begin(), key.end()), key.end());
        listed.push_back(std::move(key));
    }
    for (std::size_t i = 0; i < used.size(); ++i)
        if (!used[i]) throw FanError(FanErrorKind::UnusedRay, "ray " + std::to_string(i) + " lies in no cone");
    std::sort(listed.begin(), listed.end());
    listed.erase(std::unique(listed.begin(), listed.end()), listed.end());

    std::map<FaceKey, Cone> cones;
    for (const auto& key : listed) {
        Cone c = Cone::from_generators(n, rays_of(raw.rays, key));
        if (!c.is_pointed())
            throw FanError(FanErrorKind::NotStronglyConvex, "cone " + to_string(key) + " contains a line");
        if (c.rays().size() != key.size())
            throw FanError(FanErrorKind::RedundantRay,
                           "cone " + to_string(key) + " lists a ray that is not extreme");
        cones.emplace(key, std::move(c));
    }

    // Face keys of each listed cone, in fan ray indices.
    std::map<FaceKey, std::vector<std::pair<FaceKey, Cone>>> cone_faces;
    for (const auto& [key, c] : cones) {
        auto& out = cone_faces[key];
        for (auto& f : tgit::faces(c)) {
            FaceKey fk;
            for (std::size_t i : f.ray_indices) fk.push_back(ray_index.at(c.rays()[i]));
            std::sort(fk.begin(), fk.end());
            out.emplace_back(std::move(fk), std::move(f.cone));
        }
    }
    auto is_face_key = [&](const FaceKey& cone_key, const FaceKey& candidate) {
        const auto& fs = cone_faces.at(cone_key);
        return std::any_of(fs.begin(), fs.end(), [&](const auto& p) { return p.first == candidate; });
    };

    for (auto a = cones.begin(); a != cones.end(); ++a)
        for (auto b = std::next(a); b != cones.end(); ++b) {
            const FaceKey common = intersection(a->first, b->first);
            const Cone meet = intersect(a->second, b->second);
            if (meet != Cone::from_generators(n, rays_of(raw.rays, common)) || !is_face_key(a->first, common) ||
                !is_face_key(b->first, common))
                throw FanError(FanErrorKind::IntersectionNotFace,
                               "cones " + to_string(a->first) + " and " + to_string(b->first) +
                                   " do not meet in a common face");
        }

    Fan fan;
    fan.rank_ = n;
    fan.rays_ = raw.rays;
    for (const auto& [key, c] : cones) {
        const bool dominated = std::any_of(cones.begin(), cones.end(), [&](const auto& other) {
            return other.first != key && is_subset(key, other.first);
        });
        if (!dominated) fan.maximal_.push_back(key);
    }

    std::map<FaceKey, Cone> all;
    for (const auto& key : fan.maximal_)
        for (const auto& [fk, fc] : cone_faces.at(key)) all.emplace(fk, fc);
    for (auto& [key, c] : all) fan.faces_.push_back({key, c, {}});
    std::sort(fan.faces_.begin(), fan.faces_.end(), [](const FanFace& a, const FanFace& b) {
        if (a.cone.dimension() != b.cone.dimension()) return a.cone.dimension() < b.cone.dimension();
        return a.key < b.key;
    });
    for (std::size_t i = 0; i < fan.faces_.size(); ++i) fan.index_.emplace(fan.faces_[i].key, i);
    // In a fan, G ⊆ F as ray sets already makes G a face of F.
    for (auto& f : fan.faces_)
        for (std::size_t j = 0; j < fan.faces_.size(); ++j)
            if (is_subset(fan.faces_[j].key, f.key)) f.subfaces.push_back(j);
    return fan;
}

std::size_t Fan::face_index(const FaceKey& key) const {
    const auto it = index_.find(key);
    if (it == index_.end()) throw std::out_of_range("fan has no face " + to_string(key));
    return it->second;
}

std::vector<FaceKey> Fan::faces_of(const FaceKey& key) const {
    std::vector<FaceKey> out;
    for (std::size_t j : face(key).subfaces) out.push_back(faces_[j].key);
    return out;
}

bool Fan::is_complete() const {
    std::map<FaceKey, int> codim_one;
    for (const auto& key : maximal_) {
        if (cone(key).dimension() != rank_) return false;
        for (const auto& f : faces_of(key))
            if (rank_ > 0 && cone(f).dimension() == rank_ - 1) ++codim_one[f];
    }
    return std::all_of(codim_one.begin(), codim_one.end(), [](const auto& p) { return p.second == 2; });
}

RawFan Fan::raw() const { return {rank_, rays_, maximal_}; }

// ---------------------------------------------------------------- divisors

ToricDivisor principal_divisor(const Fan& fan, const IntVector& m) {
    ToricDivisor d;
    for (const auto& v : fan.rays()) d.coefficients.push_back(dot(m, v));
    return d;
}

DivisorGroup::DivisorGroup(std::vector<ToricDivisor> basis) : basis_(std::move(basis)) {
    if (basis_.empty()) return;
    const std::size_t len = basis_.front().coefficients.size();
    std::vector<IntVector> rows;
    for (const auto& d : basis_) {
        if (d.coefficients.size() != len) throw std::invalid_argument("DivisorGroup: coefficient length mismatch");
        rows.push_back(d.coefficients);
    }
    if (tgit::rank(IntMatrix::from_rows(rows, len)) != basis_.size())
        throw std::invalid_argument("DivisorGroup: basis divisors are not independent");
}

ToricDivisor DivisorGroup::combination(const IntVector& m) const {
    if (m.size() != basis_.size()) throw std::invalid_argument("DivisorGroup::combination: wrong length");
    ToricDivisor out;
    if (basis_.empty()) return out;
    out.coefficients = zero_vector(basis_.front().coefficients.size());
    for (std::size_t i = 0; i < m.size(); ++i) out.coefficients = add(out.coefficients, scale(m[i], basis_[i].coefficients));
    return out;
}

// ---------------------------------------------------------------- loci

void SubfanLocus::insert_with_faces(const Fan& fan, const FaceKey& key) {
    for (auto& f : fan.faces_of(key)) faces_.insert(std::move(f));
}

std::vector<FaceKey> SubfanLocus::maximal_elements(const Fan&) const {
    std::vector<FaceKey> out;
    for (const auto& a : faces_) {
        const bool dominated = std::any_of(faces_.begin(), faces_.end(), [&](const FaceKey& b) {
            return a != b && is_subset(a, b);
        });
        if (!dominated) out.push_back(a);
    }
    return out;
}

bool SubfanLocus::is_face_closed(const Fan& fan) const {
    for (const auto& key : faces_)
        for (const auto& f : fan.faces_of(key))
            if (!contains(f)) return false;
    return true;
}

bool SubfanLocus::is_subset_of(const SubfanLocus& other) const {
    return std::includes(other.faces_.begin(), other.faces_.end(), faces_.begin(), faces_.end());
}

SubfanLocus SubfanLocus::whole(const Fan& fan) {
    std::set<FaceKey> all;
    for (const auto& f : fan.faces()) all.insert(f.key);
    return SubfanLocus(std::move(all));
}

std::string to_string(const SubfanLocus& locus) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& f : locus.faces()) {
        os << (first ? "" : ", ") << to_string(f);
        first = false;
    }
    os << '}';
    return os.str();
}

std::optional<IntVector> is_cartier_on(const ToricDivisor& d, const Fan& fan, const FaceKey& face) {
    if (d.coefficients.size() != fan.ray_count()) throw std::invalid_argument("is_cartier_on: coefficient count");
    IntMatrix a(face.size(), fan.lattice_rank());
    IntVector b(face.size());
    for (std::size_t r = 0; r < face.size(); ++r) {
        for (std::size_t c = 0; c < fan.lattice_rank(); ++c) a(r, c) = fan.rays()[face[r]][c];
        b[r] = -d.coefficients[face[r]];
    }
    return solve_integer(a, b);
}

SubfanLocus cartier_locus(const DivisorGroup& group, const Fan& fan) {
    std::set<FaceKey> out;
    for (const auto& f : fan.faces()) {
        const bool ok = std::all_of(group.basis().begin(), group.basis().end(),
                                    [&](const ToricDivisor& d) { return is_cartier_on(d, fan, f.key).has_value(); });
        if (ok) out.insert(f.key);
    }
    return SubfanLocus(std::move(out));
}

ClassGroup class_group(const Fan& fan) {
    const std::size_t n = fan.lattice_rank();
    const std::size_t r = fan.ray_count();
    const IntMatrix pairing = IntMatrix::from_rows(fan.rays(), n);  // r x n: m -> div(χ^m)

    ClassGroup out;
    const auto snf = smith_normal_form(pairing);
    const std::size_t s = snf.rank();
    out.rank = r - s;
    out.torus_factor_rank = n - s;
    for (const auto& f : snf.invariant_factors())
        if (f > 1) out.torsion.push_back(f);

    // T-invariant Cartier divisors: a with a local datum m_σ on every maximal cone.
    const auto& maximal = fan.maximal_cones();
    const std::size_t vars = r + n * maximal.size();
    std::vector<IntVector> equations;
    for (std::size_t c = 0; c < maximal.size(); ++c)
        for (std::size_t rho : maximal[c]) {
            IntVector e = zero_vector(vars);
            e[rho] = 1;
            for (std::size_t j = 0; j < n; ++j) e[r + c * n + j] = fan.rays()[rho][j];
            equations.push_back(std::move(e));
        }
    const auto kernel = kernel_basis(IntMatrix::from_rows(equations, vars));
    std::vector<IntVector> cartier_gens;
    for (const auto& v : kernel.basis().row_vectors()) cartier_gens.emplace_back(v.begin(), v.begin() + r);
    const auto cartier = Sublattice::from_generators(r, cartier_gens);

    const IntMatrix basis_t = cartier.basis().transpose();
    std::vector<IntVector> coords;
    for (std::size_t j = 0; j < n; ++j) {
        const auto c = solve_integer(basis_t, pairing.column(j));
        if (!c) throw std::logic_error("class_group: principal divisor outside the Cartier lattice");
        coords.push_back(*c);
    }
    const std::size_t k = cartier.rank();
    const auto pic = smith_normal_form(IntMatrix::from_columns(coords, k));
    out.picard_rank = k - pic.rank();
    for (const auto& f : pic.invariant_factors())
        if (f > 1) out.picard_torsion.push_back(f);
    return out;
}

FeasibilitySystem section_system(const ToricDivisor& d, const Fan& fan) {
    const std::size_t n = fan.lattice_rank();
    FeasibilitySystem sys;
    sys.dimension = n + 1;
    for (std::size_t rho = 0; rho < fan.ray_count(); ++rho) {
        IntVector form = fan.rays()[rho];
        form.push_back(d.coefficients.at(rho));
        sys.weak_inequalities.push_back(std::move(form));
    }
    return sys;
}

IntVector zero_pattern(const IntVector& u, const Integer& n, const ToricDivisor& d, const Fan& fan) {
    IntVector b(fan.ray_count());
    for (std::size_t rho = 0; rho < fan.ray_count(); ++rho) b[rho] = dot(u, fan.rays()[rho]) + n * d.coefficients.at(rho);
    return b;
}

SubfanLocus open_complement(const IntVector& b, const Fan& fan) {
    std::set<FaceKey> out;
    for (const auto& f : fan.faces()) {
        const bool all_zero = std::all_of(f.key.begin(), f.key.end(), [&](std::size_t rho) { return b.at(rho) == 0; });
        if (all_zero) out.insert(f.key);
    }
    return SubfanLocus(std::move(out));
}

std::optional<FaceKey> is_affine(const SubfanLocus& locus, const Fan& fan) {
    const auto top = locus.maximal_elements(fan);
    if (top.size() != 1) return std::nullopt;
    const auto fs = fan.faces_of(top.front());
    if (std::set<FaceKey>(fs.begin(), fs.end()) != locus.faces()) return std::nullopt;
    return top.front();
}

bool affineness_guard(const Fan& fan, const FaceKey& tau) {
    const auto fs = fan.faces_of(tau);
    const std::set<FaceKey> own(fs.begin(), fs.end());
    for (const auto& f : fan.faces())
        if (is_subset(f.key, tau) && !own.count(f.key)) return false;
    return true;
}

// ---------------------------------------------------------------- witness systems

IntVector ChartSystem::degree_of(const IntVector& w) const {
    return IntVector(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(degree_count));
}

IntVector ChartSystem::monomial_of(const IntVector& w, std::size_t i) const {
    const auto start = w.begin() + static_cast<std::ptrdiff_t>(degree_count + i * lattice_rank);
    return IntVector(start, start + static_cast<std::ptrdiff_t>(lattice_rank));
}

ChartSystem chart_witness_system(const ChartSystemRequest& req) {
    const Fan& fan = *req.fan;
    const std::size_t n = fan.lattice_rank();
    const std::size_t k = req.degree_basis.size();
    const std::size_t d = req.weight_map.rows();
    if (req.weight_map.cols() != n || req.shift_map.rows() != d || req.shift_map.cols() != k)
        throw std::invalid_argument("chart_witness_system: weight/shift shape mismatch");

    ChartSystem out;
    out.degree_count = k;
    out.lattice_rank = n;
    out.monomial_rays.push_back(std::nullopt);
    out.monomial_count = 1;
    auto& sys = out.system;
    sys.dimension = k + n;

    for (std::size_t rho = 0; rho < fan.ray_count(); ++rho) {
        IntVector form = zero_vector(sys.dimension);
        for (std::size_t j = 0; j < k; ++j) form[j] = req.degree_basis[j].coefficients.at(rho);
        for (std::size_t c = 0; c < n; ++c) form[k + c] = fan.rays()[rho][c];
        if (std::binary_search(req.tau.begin(), req.tau.end(), rho)) sys.equalities.push_back(std::move(form));
        else sys.strict_inequalities.push_back(std::move(form));
    }
    for (std::size_t r = 0; r < d; ++r) {
        IntVector form = zero_vector(sys.dimension);
        for (std::size_t j = 0; j < k; ++j) form[j] = req.shift_map(r, j);
        for (std::size_t c = 0; c < n; ++c) form[k + c] = req.weight_map(r, c);
        if (!is_zero(form)) sys.equalities.push_back(std::move(form));
    }
    if (req.positive_degree)
        for (std::size_t j = 0; j < k; ++j) {
            IntVector form = zero_vector(sys.dimension);
            form[j] = 1;
            sys.strict_inequalities.push_back(std::move(form));
        }
    return out;
}

SubfanLocus ample_locus(const DivisorGroup& group, const Fan& fan) {
    const SubfanLocus cartier = cartier_locus(group, fan);
    SubfanLocus out;
    for (const auto& tau : cartier.faces()) {
        if (out.contains(tau)) continue;
        ChartSystemRequest req;
        req.fan = &fan;
        req.tau = tau;
        req.degree_basis = group.basis();
        req.weight_map = IntMatrix(0, fan.lattice_rank());
        req.shift_map = IntMatrix(0, group.rank());
        req.positive_degree = false;
        if (!affineness_guard(fan, tau)) continue;
        if (feasible_strict(chart_witness_system(req).system)) out.insert_with_faces(fan, tau);
    }
    return out;
}

}  // namespace tgit
