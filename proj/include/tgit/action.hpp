// Subtorus actions on toric varieties and their semistable loci.
//
// A subtorus H = (K*)^d of the big torus is given by its one-parameter-subgroup
// map phi: Z^d -> N. Linearizations of a divisor group are character shifts of
// the canonical one, so the weight of a monomial section chi^u of D is
// phi^*(u) + shift(D).
#pragma once

#include "tgit/cone.hpp"
#include "tgit/execution.hpp"
#include "tgit/lattice.hpp"
#include "tgit/toric.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tgit {

class ActionError : public std::runtime_error {
public:
    ActionError(const std::string& what, IntVector kernel_vector)
        : std::runtime_error(what), kernel_(std::move(kernel_vector)) {}
    /// A nonzero vector of ker(phi).
    const IntVector& kernel_vector() const { return kernel_; }

private:
    IntVector kernel_;
};

class NotAffine : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SubtorusAction {
public:
    /// `phi` is n x d, column i the image of the i-th basis vector of Z^d.
    explicit SubtorusAction(IntMatrix phi);

    /// Trivial action (d = 0) on a rank-n lattice.
    static SubtorusAction trivial(std::size_t lattice_rank) { return SubtorusAction(IntMatrix(lattice_rank, 0)); }

    std::size_t lattice_rank() const { return phi_.rows(); }
    std::size_t dimension() const { return phi_.cols(); }
    const IntMatrix& phi() const { return phi_; }
    /// d x n, the dual weight map M -> Z^d.
    const IntMatrix& phi_star() const { return phi_star_; }
    /// Saturation of im(phi) in N.
    const Sublattice& saturated_image() const { return saturated_; }

private:
    IntMatrix phi_;
    IntMatrix phi_star_;
    Sublattice saturated_;
};

/// Character shifts c(D_i) in Z^d, one per basis divisor of the group in play.
struct Linearization {
    std::vector<IntVector> shifts;

    static Linearization canonical(std::size_t basis_size, std::size_t d) {
        return {std::vector<IntVector>(basis_size, zero_vector(d))};
    }
    bool is_canonical() const;
    /// Shift of sum m_i D_i.
    IntVector shift_of(const IntVector& degree, std::size_t d) const;
};

/// phi^*(u) + shift(degree), with `degree` the coefficient vector in the group basis.
IntVector weight_of(const IntVector& u, const IntVector& degree, const Linearization& lin,
                    const SubtorusAction& action);

/// One homogeneous monomial of the certified invariant section.
struct CertifiedMonomial {
    /// The ray where it does not vanish, or nullopt for the zero cone.
    std::optional<std::size_t> ray;
    IntVector exponent;
};

/// Invertible monomial chi^w of degree sum m_i D_i on the chart.
struct InvertibleSection {
    IntVector degree;
    IntVector exponent;
};

struct SemistabilityCertificate {
    FaceKey cone;
    bool group_case = false;
    /// Coefficients in the group basis; the single divisor case has one entry n > 0.
    IntVector degree;
    std::vector<CertifiedMonomial> monomials;
    /// m_i with <m_i, v_ρ> = -a_ρ(D_i) on the rays of the chart.
    std::vector<IntVector> cartier_data;
    /// Generators of the sublattice of degrees with an invertible section (group case).
    std::vector<InvertibleSection> invertibles;
    /// Index of that sublattice in the group; 0 when the rank is deficient.
    Integer index = 0;
};

struct SemistableLocus {
    SubfanLocus locus;
    std::map<FaceKey, SemistabilityCertificate> certificates;
    /// Faces whose witness passed but whose equality locus was not affine.
    std::vector<FaceKey> guard_rejections;
};

SemistableLocus semistable_divisor(const ToricDivisor& d, const Linearization& lin, const SubtorusAction& action,
                                   const Fan& fan, Execution ex = Execution::parallel);

SemistableLocus semistable_group(const DivisorGroup& group, const Linearization& lin, const SubtorusAction& action,
                                 const Fan& fan, Execution ex = Execution::parallel);

/// Trivial bundle linearized by the character chi. Throws NotAffine.
SemistableLocus mumford_trivial_semistable(const IntVector& chi, const SubtorusAction& action, const Fan& fan,
                                           Execution ex = Execution::parallel);

/// phi^*(sigma^dual ∩ gamma^perp), the weights of sections not vanishing on the orbit of gamma.
Cone achievable_weights(const FaceKey& gamma, const SubtorusAction& action, const Fan& fan);

struct Chamber {
    /// Closure of the relatively open cell.
    Cone cone;
    /// Relative interior point of the cell.
    IntVector sample;
    SemistableLocus locus;
};

/// Cells of the arrangement of all achievable-weight cones inside phi^*(sigma^dual).
/// Throws NotAffine.
std::vector<Chamber> git_chambers(const SubtorusAction& action, const Fan& fan, Execution ex = Execution::parallel);

struct ObstructionReport {
    SubfanLocus required;
    /// K_gamma for every maximal face of `required`.
    std::vector<std::pair<FaceKey, Cone>> achievable;
    std::vector<std::pair<std::pair<FaceKey, FaceKey>, Cone>> pairwise;
    Cone common;
    SemistableLocus at_zero;
    bool obstructed = false;
    /// Sample character of a chamber realizing `required`, if any.
    std::optional<IntVector> realizing_character;
};

ObstructionReport obstruction_report(const SubfanLocus& required, const SubtorusAction& action, const Fan& fan,
                                     Execution ex = Execution::parallel);

}  // namespace tgit
