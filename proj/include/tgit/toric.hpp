// Fans, invariant Weil divisors and the loci they cut out.
//
// Faces of a fan are named by their sorted ray-index lists (FaceKey); the zero
// cone is the empty list. Every open torus-invariant subset is a face-closed
// set of such keys.
#pragma once

#include "tgit/cone.hpp"
#include "tgit/integer.hpp"
#include "tgit/lattice.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tgit {

using FaceKey = std::vector<std::size_t>;

std::string to_string(const FaceKey& key);

enum class FanErrorKind {
    Empty,
    DimensionMismatch,
    NonPrimitiveRay,
    DuplicateRay,
    UnusedRay,
    RayIndexOutOfRange,
    RedundantRay,
    NotStronglyConvex,
    IntersectionNotFace,
};

const char* to_string(FanErrorKind kind);

class FanError : public std::runtime_error {
public:
    FanError(FanErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    FanErrorKind kind() const { return kind_; }

private:
    FanErrorKind kind_;
};

/// Unvalidated fan data as it comes from an input file.
struct RawFan {
    std::size_t lattice_rank = 0;
    std::vector<IntVector> rays;
    std::vector<FaceKey> cones;
};

struct FanFace {
    FaceKey key;
    Cone cone;
    /// Indices (into Fan::faces()) of every face of this cone, itself included.
    std::vector<std::size_t> subfaces;
};

class Fan {
public:
    /// Checks the fan axioms and builds the face poset. Throws FanError.
    static Fan validate(const RawFan& raw);

    std::size_t lattice_rank() const { return rank_; }
    const std::vector<IntVector>& rays() const { return rays_; }
    std::size_t ray_count() const { return rays_.size(); }
    const std::vector<FaceKey>& maximal_cones() const { return maximal_; }

    /// Sorted by dimension, then key.
    const std::vector<FanFace>& faces() const { return faces_; }
    bool has_face(const FaceKey& key) const { return index_.count(key) != 0; }
    std::size_t face_index(const FaceKey& key) const;
    const FanFace& face(const FaceKey& key) const { return faces_[face_index(key)]; }
    const Cone& cone(const FaceKey& key) const { return face(key).cone; }
    /// Keys of all faces of the fan cone `key`.
    std::vector<FaceKey> faces_of(const FaceKey& key) const;

    bool is_affine() const { return maximal_.size() == 1; }
    /// Support is the whole space: every maximal cone is full-dimensional and
    /// every codimension-one face lies in exactly two maximal cones.
    bool is_complete() const;

    /// Rays and maximal cones in raw form.
    RawFan raw() const;

private:
    std::size_t rank_ = 0;
    std::vector<IntVector> rays_;
    std::vector<FaceKey> maximal_;
    std::vector<FanFace> faces_;
    std::map<FaceKey, std::size_t> index_;
};

/// Invariant Weil divisor sum a_ρ D_ρ: one integer coefficient per fan ray.
struct ToricDivisor {
    IntVector coefficients;

    friend bool operator==(const ToricDivisor&, const ToricDivisor&) = default;
};

ToricDivisor principal_divisor(const Fan& fan, const IntVector& m);

/// Free group of divisors with a Z-independent basis (empty basis = trivial group).
class DivisorGroup {
public:
    DivisorGroup() = default;
    explicit DivisorGroup(std::vector<ToricDivisor> basis);

    const std::vector<ToricDivisor>& basis() const { return basis_; }
    std::size_t rank() const { return basis_.size(); }
    /// Coefficient vector of sum m_i D_i.
    ToricDivisor combination(const IntVector& m) const;

private:
    std::vector<ToricDivisor> basis_;
};

/// Face-closed set of faces, i.e. an open invariant subset.
class SubfanLocus {
public:
    SubfanLocus() = default;
    explicit SubfanLocus(std::set<FaceKey> faces) : faces_(std::move(faces)) {}

    /// Adds the fan cone `key` together with all of its faces.
    void insert_with_faces(const Fan& fan, const FaceKey& key);
    bool contains(const FaceKey& key) const { return faces_.count(key) != 0; }
    bool empty() const { return faces_.empty(); }
    std::size_t size() const { return faces_.size(); }
    const std::set<FaceKey>& faces() const { return faces_; }
    /// Elements not properly contained in another element.
    std::vector<FaceKey> maximal_elements(const Fan& fan) const;
    bool is_face_closed(const Fan& fan) const;
    bool is_subset_of(const SubfanLocus& other) const;

    static SubfanLocus whole(const Fan& fan);

    friend bool operator==(const SubfanLocus&, const SubfanLocus&) = default;

private:
    std::set<FaceKey> faces_;
};

std::string to_string(const SubfanLocus& locus);

/// m in M with <m, v_ρ> = -a_ρ for every ray of the face, if D is Cartier there.
std::optional<IntVector> is_cartier_on(const ToricDivisor& d, const Fan& fan, const FaceKey& face);

SubfanLocus cartier_locus(const DivisorGroup& group, const Fan& fan);

struct ClassGroup {
    std::size_t rank = 0;
    IntVector torsion;
    /// Rank of the torus factor split off when the rays do not span N.
    std::size_t torus_factor_rank = 0;
    std::size_t picard_rank = 0;
    IntVector picard_torsion;
};

ClassGroup class_group(const Fan& fan);

/// Weak system {<u, v_ρ> + n a_ρ >= 0 for all rays} in variables (u, n).
FeasibilitySystem section_system(const ToricDivisor& d, const Fan& fan);

/// b_ρ = <u, v_ρ> + n a_ρ: the coefficients of div(χ^u) + n D.
IntVector zero_pattern(const IntVector& u, const Integer& n, const ToricDivisor& d, const Fan& fan);

/// Faces all of whose rays have b_ρ = 0: the complement of the zero set.
SubfanLocus open_complement(const IntVector& b, const Fan& fan);

/// The cone τ if the locus is exactly the face set of τ.
std::optional<FaceKey> is_affine(const SubfanLocus& locus, const Fan& fan);

/// Every fan cone whose rays all lie in τ(1) is a face of τ.
bool affineness_guard(const Fan& fan, const FaceKey& tau);

/// Witness system of a chart τ: one invariant monomial section vanishing
/// exactly off τ(1).
///
/// Variables are laid out as [degree (k entries) | u]. The degree is
/// sum m_i D_i over `degree_basis`.
struct ChartSystemRequest {
    const Fan* fan = nullptr;
    FaceKey tau;
    std::vector<ToricDivisor> degree_basis;
    /// d x n, the transpose of the subtorus map; zero rows drop the weight constraint.
    IntMatrix weight_map;
    /// d x k, column i is the character shift of degree_basis[i].
    IntMatrix shift_map;
    bool positive_degree = true;
};

struct ChartSystem {
    FeasibilitySystem system;
    std::size_t degree_count = 0;
    std::size_t monomial_count = 0;
    std::size_t lattice_rank = 0;
    /// Ray owning each monomial; always a single unowned entry.
    std::vector<std::optional<std::size_t>> monomial_rays;

    IntVector degree_of(const IntVector& witness) const;
    IntVector monomial_of(const IntVector& witness, std::size_t i) const;
};

ChartSystem chart_witness_system(const ChartSystemRequest& request);

/// Faces τ in the Cartier locus that are X \ Z(f) for a homogeneous section f.
SubfanLocus ample_locus(const DivisorGroup& group, const Fan& fan);

}  // namespace tgit
