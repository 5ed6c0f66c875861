// Exact linear algebra over finitely generated free abelian groups.
//
// Everything here works on arbitrary-precision integers. Matrices are small
// (the ranks that show up in toric GIT are tiny), so the algorithms favour
// determinism and clarity over asymptotic speed.
#pragma once

#include "tgit/integer.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace tgit {

/// Dense row-major integer matrix. Zero rows or zero columns are allowed.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(std::size_t n);
    /// Builds a matrix whose rows are the given vectors; `cols` is needed when
    /// there are no rows.
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
    static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector row(std::size_t r) const;
    IntVector column(std::size_t c) const;
    std::vector<IntVector> row_vectors() const;

    IntMatrix transpose() const;
    bool is_zero() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_columns(std::size_t a, std::size_t b);
    /// row[target] += factor * row[source]
    void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
    void add_column_multiple(std::size_t target, std::size_t source, const Integer& factor);
    void negate_row(std::size_t r);
    void negate_column(std::size_t c);

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& x);

std::string to_string(const IntMatrix& m);

/// Rank over the rationals.
std::size_t rank(const IntMatrix& m);
/// Determinant of a square matrix (fraction-free elimination).
Integer determinant(const IntMatrix& m);

/// U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}.
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;

    std::size_t rank() const;
    /// Nonzero diagonal entries in order.
    IntVector invariant_factors() const;
};

/// Pivots on the smallest nonzero absolute value, ties broken row-major, so the
/// result is a deterministic function of the input.
SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Row Hermite normal form with the zero rows dropped: an echelon basis of the
/// row lattice with positive pivots and reduced entries above each pivot.
IntMatrix hermite_rows(const IntMatrix& a);

/// A sublattice of Z^n given by linearly independent basis rows.
class Sublattice {
public:
    Sublattice() = default;
    explicit Sublattice(std::size_t ambient_rank);
    /// Any generating set; dependent generators are reduced to a canonical
    /// Hermite basis.
    static Sublattice from_generators(std::size_t ambient_rank, const std::vector<IntVector>& generators);

    std::size_t ambient_rank() const { return ambient_rank_; }
    std::size_t rank() const { return basis_.rows(); }
    const IntMatrix& basis() const { return basis_; }
    bool saturated() const { return saturated_; }
    bool contains(const IntVector& v) const;

    friend bool operator==(const Sublattice& a, const Sublattice& b) {
        return a.ambient_rank_ == b.ambient_rank_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_rank_ = 0;
    IntMatrix basis_;
    bool saturated_ = true;
};

/// Linear map Z^source -> Z^target, stored as a target x source matrix.
struct LatticeMap {
    IntMatrix matrix;
    std::size_t source_rank = 0;
    std::size_t target_rank = 0;

    LatticeMap() = default;
    explicit LatticeMap(IntMatrix m);

    IntVector apply(const IntVector& x) const { return matrix * x; }
};

/// Saturated basis of {x : A x = 0}.
Sublattice kernel_basis(const IntMatrix& a);

/// Smallest saturated sublattice containing `s` (i.e. (s ⊗ Q) ∩ Z^n).
Sublattice saturate(const Sublattice& s);

/// Some integer x with A x = b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

struct CokernelProjection {
    /// Surjection Z^n -> Z^(n - rank S) onto the free part of Z^n / S, rows in
    /// Hermite form.
    LatticeMap projection;
    /// Invariant factors > 1 of Z^n / S.
    IntVector torsion;
};

CokernelProjection cokernel_projection(const Sublattice& s);

}  // namespace tgit
