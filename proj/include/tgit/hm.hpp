// Hilbert-Mumford limits for linear torus actions on support patterns, and a
// cross-check of toric semistable loci through an ambient linear model.
#pragma once

#include "tgit/action.hpp"
#include "tgit/cone.hpp"
#include "tgit/toric.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace tgit {

/// Diagonal action with weight w_i on coordinate i.
class LinearAction {
public:
    LinearAction(std::size_t dimension, std::vector<IntVector> weights);

    std::size_t dimension() const { return dimension_; }
    std::size_t coordinate_count() const { return weights_.size(); }
    const std::vector<IntVector>& weights() const { return weights_; }

private:
    std::size_t dimension_;
    std::vector<IntVector> weights_;
};

/// Orbit-level surrogate for a point: the set of its nonzero coordinates.
struct PointPattern {
    std::vector<std::size_t> support;  // sorted

    friend bool operator==(const PointPattern&, const PointPattern&) = default;
};

using PatternPredicate = std::function<bool(const PointPattern&)>;

/// lim_{t->0} lambda(t) p, if it exists.
std::optional<PointPattern> limit(const IntVector& lambda, const PointPattern& p, const LinearAction& act);

/// A one-parameter subgroup whose limit exists and satisfies `target`.
/// `target` must be closed under passing to subsets.
std::optional<IntVector> destabilize(const PointPattern& p, const PatternPredicate& target, const LinearAction& act);

/// destabilize with target "support inside `allowed`" (sorted coordinate indices).
std::optional<IntVector> destabilize_into(const PointPattern& p, const std::vector<std::size_t>& allowed,
                                          const LinearAction& act);

class HilbertBasisTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Minimal generators of the monoid c ∩ Z^n of a pointed cone. Throws
/// HilbertBasisTooLarge past `bound` elements or when the search box is too big.
std::vector<IntVector> hilbert_basis(const Cone& c, std::size_t bound = 64);

struct FaceComparison {
    FaceKey face;
    PointPattern pattern;
    bool toric = false;
    bool ambient = false;
    std::optional<IntVector> destabilizer;
};

struct CrossValidation {
    /// Generators (u, n) of the section monoid of D, the ambient coordinates.
    std::vector<IntVector> coordinates;
    /// Weights in Z^(d+1); the last coordinate is the fiber.
    LinearAction ambient{0, {}};
    std::vector<FaceComparison> faces;
    /// Every toric semistable face is ambient semistable.
    bool sound = true;
    bool agree = true;
};

CrossValidation cross_validate(const Fan& fan, const SubtorusAction& action, const ToricDivisor& d,
                               const Linearization& lin, std::size_t bound = 64);

}  // namespace tgit
