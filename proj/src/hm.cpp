#include "tgit/hm.hpp"

#include <algorithm>
#include <set>

namespace tgit {

LinearAction::LinearAction(std::size_t dimension, std::vector<IntVector> weights)
    : dimension_(dimension), weights_(std::move(weights)) {
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (weights_[i].size() != dimension_)
            throw std::invalid_argument("weight " + std::to_string(i) + " has dimension " +
                                        std::to_string(weights_[i].size()) + ", expected " + std::to_string(dimension_));
}

std::optional<PointPattern> limit(const IntVector& lambda, const PointPattern& p, const LinearAction& act) {
    if (lambda.size() != act.dimension()) throw std::invalid_argument("limit: lambda has wrong dimension");
    PointPattern out;
    for (std::size_t i : p.support) {
        const Integer s = dot(lambda, act.weights().at(i));
        if (s < 0) return std::nullopt;
        if (s == 0) out.support.push_back(i);
    }
    return out;
}

namespace {

// lambda >= 0 on the support, > 0 off `allowed`.
std::optional<IntVector> solve_pattern(const PointPattern& p, const std::vector<std::size_t>& allowed,
                                       const LinearAction& act) {
    FeasibilitySystem sys;
    sys.dimension = act.dimension();
    for (std::size_t i : p.support) {
        if (std::binary_search(allowed.begin(), allowed.end(), i)) sys.weak_inequalities.push_back(act.weights()[i]);
        else sys.strict_inequalities.push_back(act.weights()[i]);
    }
    return feasible_strict(sys);
}

}  // namespace

std::optional<IntVector> destabilize_into(const PointPattern& p, const std::vector<std::size_t>& allowed,
                                          const LinearAction& act) {
    return solve_pattern(p, allowed, act);
}

std::optional<IntVector> destabilize(const PointPattern& p, const PatternPredicate& target, const LinearAction& act) {
    // Maximal subsets of the support inside the target, searched downward.
    std::vector<std::vector<std::size_t>> maximal;
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> layer{p.support};
    while (!layer.empty()) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& a : layer) {
            const bool covered = std::any_of(maximal.begin(), maximal.end(), [&](const auto& m) {
                return std::includes(m.begin(), m.end(), a.begin(), a.end());
            });
            if (covered) continue;
            if (target(PointPattern{a})) {
                maximal.push_back(a);
                continue;
            }
            for (std::size_t k = 0; k < a.size(); ++k) {
                auto b = a;
                b.erase(b.begin() + static_cast<std::ptrdiff_t>(k));
                if (seen.insert(b).second) next.push_back(std::move(b));
            }
        }
        layer = std::move(next);
    }
    for (const auto& a : maximal)
        if (auto lambda = solve_pattern(p, a, act)) return lambda;
    return std::nullopt;
}

std::vector<IntVector> hilbert_basis(const Cone& c, std::size_t bound) {
    if (!c.is_pointed()) throw std::invalid_argument("hilbert_basis: cone contains a line");
    if (c.is_zero()) return {};
    const std::size_t n = c.ambient_rank();
    constexpr double kMaxBox = 2.0e7;

    IntVector grading = zero_vector(n);
    for (const auto& f : c.facet_normals()) grading = add(grading, f);

    std::vector<long long> lo(n, 0), hi(n, 0);
    Integer max_grade = 0;
    double volume = 1;
    for (std::size_t k = 0; k < n; ++k) {
        Integer l = 0, h = 0;
        for (const auto& r : c.rays()) (r[k] < 0 ? l : h) += r[k];
        if (abs(l) > 1000000 || h > 1000000) throw HilbertBasisTooLarge("hilbert_basis: rays too long");
        lo[k] = l.convert_to<long long>();
        hi[k] = h.convert_to<long long>();
        volume *= static_cast<double>(hi[k] - lo[k] + 1);
    }
    for (const auto& r : c.rays()) max_grade += dot(grading, r);
    if (volume > kMaxBox)
        throw HilbertBasisTooLarge("hilbert_basis: search box has " + std::to_string(static_cast<long long>(volume)) +
                                   " points");

    auto to_ll = [](const IntVector& v) {
        std::vector<long long> out;
        for (const auto& x : v) out.push_back(x.convert_to<long long>());
        return out;
    };
    std::vector<std::vector<long long>> ineqs;
    for (const auto& f : c.inequalities()) ineqs.push_back(to_ll(f));
    const auto g = to_ll(grading);
    const long long g_max = max_grade.convert_to<long long>();
    auto inside = [&](const std::vector<long long>& x) {
        for (const auto& f : ineqs) {
            long long s = 0;
            for (std::size_t k = 0; k < n; ++k) s += f[k] * x[k];
            if (s < 0) return false;
        }
        return true;
    };
    auto grade_of = [&](const std::vector<long long>& x) {
        long long s = 0;
        for (std::size_t k = 0; k < n; ++k) s += g[k] * x[k];
        return s;
    };

    std::vector<std::pair<long long, std::vector<long long>>> candidates;
    std::vector<long long> x(lo);
    for (;;) {
        const long long gr = grade_of(x);
        if (gr > 0 && gr <= g_max && inside(x)) candidates.emplace_back(gr, x);
        std::size_t k = 0;
        while (k < n && x[k] == hi[k]) x[k] = lo[k], ++k;
        if (k == n) break;
        ++x[k];
    }
    std::sort(candidates.begin(), candidates.end());

    std::vector<std::pair<long long, std::vector<long long>>> basis;
    std::vector<long long> diff(n);
    for (const auto& [gr, p] : candidates) {
        bool reducible = false;
        for (const auto& [hg, h] : basis) {
            if (hg >= gr) break;
            for (std::size_t k = 0; k < n; ++k) diff[k] = p[k] - h[k];
            if (inside(diff)) {
                reducible = true;
                break;
            }
        }
        if (reducible) continue;
        basis.emplace_back(gr, p);
        if (basis.size() > bound)
            throw HilbertBasisTooLarge("hilbert_basis: more than " + std::to_string(bound) + " elements");
    }
    std::vector<IntVector> out;
    for (const auto& [gr, p] : basis) out.push_back(to_int_vector(p));
    std::sort(out.begin(), out.end());
    return out;
}

CrossValidation cross_validate(const Fan& fan, const SubtorusAction& action, const ToricDivisor& d,
                               const Linearization& lin, std::size_t bound) {
    if (fan.maximal_cones().size() != 1) throw NotAffine("cross_validate needs an affine toric variety");
    const std::size_t n = fan.lattice_rank();
    const std::size_t dim = action.dimension();

    std::vector<IntVector> forms;
    for (std::size_t rho = 0; rho < fan.ray_count(); ++rho) {
        IntVector f = fan.rays()[rho];
        f.push_back(d.coefficients.at(rho));
        forms.push_back(std::move(f));
    }
    IntVector degree_form = zero_vector(n + 1);
    degree_form[n] = 1;
    forms.push_back(degree_form);
    const Cone sections = Cone::from_inequalities(n + 1, forms);
    if (!sections.is_pointed()) throw std::invalid_argument("cross_validate: section monoid has nonconstant units");

    CrossValidation out;
    out.coordinates = hilbert_basis(sections, bound);
    std::vector<IntVector> weights;
    std::vector<std::size_t> allowed;
    for (std::size_t j = 0; j < out.coordinates.size(); ++j) {
        const auto& c = out.coordinates[j];
        const IntVector u(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n));
        IntVector w = weight_of(u, {c[n]}, lin, action);
        w.push_back(c[n]);
        weights.push_back(std::move(w));
        if (c[n] == 0) allowed.push_back(j);
    }
    IntVector fiber = zero_vector(dim + 1);
    fiber[dim] = -1;
    weights.push_back(fiber);
    out.ambient = LinearAction(dim + 1, weights);
    const std::size_t fiber_index = out.coordinates.size();

    const auto toric = semistable_divisor(d, lin, action, fan, Execution::serial);
    for (const auto& face : fan.faces()) {
        FaceComparison fc;
        fc.face = face.key;
        for (std::size_t j = 0; j < out.coordinates.size(); ++j) {
            const auto& c = out.coordinates[j];
            const IntVector u(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n));
            const bool nonvanishing = std::all_of(face.key.begin(), face.key.end(), [&](std::size_t rho) {
                return dot(u, fan.rays()[rho]) + c[n] * d.coefficients[rho] == 0;
            });
            if (nonvanishing) fc.pattern.support.push_back(j);
        }
        fc.pattern.support.push_back(fiber_index);
        fc.toric = toric.locus.contains(face.key);
        fc.destabilizer = destabilize_into(fc.pattern, allowed, out.ambient);
        fc.ambient = !fc.destabilizer.has_value();
        if (fc.toric && !fc.ambient) out.sound = false;
        if (fc.toric != fc.ambient) out.agree = false;
        out.faces.push_back(std::move(fc));
    }
    return out;
}

}  // namespace tgit
