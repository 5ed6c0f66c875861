// Rational polyhedral cones with both descriptions kept in canonical form.
#pragma once

#include "tgit/integer.hpp"
#include "tgit/lattice.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tgit {

/// Output of a double description run: cone = span(lineality) + nonneg-span(rays).
struct ConeGenerators {
    std::vector<IntVector> rays;
    std::vector<IntVector> lineality;
};

/// Generators of {x in Q^dim : <a, x> >= 0 for every a in `inequalities`}.
/// Rays are extreme modulo the lineality space and primitive; no particular
/// order.
ConeGenerators double_description(std::size_t dim, const std::vector<IntVector>& inequalities);

/// A rational polyhedral cone, possibly with lineality.
///
/// Canonical form: the lineality basis and the equation basis are Hermite bases
/// of saturated lattices; rays are primitive, orthogonal to the lineality space
/// and sorted lexicographically; facet normals are primitive, lie in the linear
/// span of the cone and are sorted. Two cones are equal as point sets iff their
/// canonical forms are equal, so `operator==` is set equality.
class Cone {
public:
    Cone() = default;

    static Cone from_generators(std::size_t ambient_rank, const std::vector<IntVector>& generators,
                                const std::vector<IntVector>& lineality = {});
    /// {x : <f, x> >= 0 for f in inequalities, <e, x> = 0 for e in equations}
    static Cone from_inequalities(std::size_t ambient_rank, const std::vector<IntVector>& inequalities,
                                  const std::vector<IntVector>& equations = {});
    static Cone zero(std::size_t ambient_rank);
    static Cone whole_space(std::size_t ambient_rank);

    std::size_t ambient_rank() const { return ambient_rank_; }
    std::size_t dimension() const { return ambient_rank_ - equations_.size(); }
    std::size_t lineality_rank() const { return lineality_.size(); }
    bool is_pointed() const { return lineality_.empty(); }
    bool is_zero() const { return rays_.empty() && lineality_.empty(); }

    const std::vector<IntVector>& rays() const { return rays_; }
    const std::vector<IntVector>& lineality() const { return lineality_; }
    const std::vector<IntVector>& facet_normals() const { return facets_; }
    const std::vector<IntVector>& equations() const { return equations_; }

    /// Rays together with both signs of every lineality basis vector.
    std::vector<IntVector> generators() const;
    /// Facet normals together with both signs of every equation.
    std::vector<IntVector> inequalities() const;

    bool contains(const IntVector& x) const;
    /// True iff x lies in the relative interior.
    bool contains_in_relative_interior(const IntVector& x) const;

    Cone dual() const;

    std::string to_string() const;

    friend bool operator==(const Cone&, const Cone&) = default;

private:
    static Cone assemble(std::size_t ambient_rank, const ConeGenerators& primal, const ConeGenerators& dual);

    std::size_t ambient_rank_ = 0;
    std::vector<IntVector> rays_;
    std::vector<IntVector> lineality_;
    std::vector<IntVector> facets_;
    std::vector<IntVector> equations_;
};

inline Cone dual(const Cone& c) { return c.dual(); }

struct ConeFace {
    Cone cone;
    /// u in the dual cone with face = c ∩ u^⊥ (zero for c itself).
    IntVector supporting_normal;
    /// Indices into the parent's rays().
    std::vector<std::size_t> ray_indices;
};

/// All faces, from the minimal face (the lineality space, {0} if pointed) up to
/// the cone itself; sorted by dimension, then by ray indices.
std::vector<ConeFace> faces(const Cone& c);

/// The smallest face of c containing the point x (x must lie in c).
ConeFace smallest_face_containing(const Cone& c, const IntVector& x);

/// Sum of the rays: strictly positive on every facet normal.
IntVector relative_interior_point(const Cone& c);

/// Cone generated by the images of c's generators.
Cone image(const Cone& c, const LatticeMap& f);

Cone intersect(const Cone& a, const Cone& b);

/// Homogeneous linear system with strict parts:
/// E x = 0, W x >= 0, S x > 0.
struct FeasibilitySystem {
    std::size_t dimension = 0;
    std::vector<IntVector> equalities;
    std::vector<IntVector> weak_inequalities;
    std::vector<IntVector> strict_inequalities;
};

/// A primitive integer point satisfying the system (strict forms strictly), if
/// one exists. Decided exactly: the strict forms are positive somewhere on the
/// relaxed cone iff they are positive at a relative interior point.
std::optional<IntVector> feasible_strict(const FeasibilitySystem& system);

}  // namespace tgit
