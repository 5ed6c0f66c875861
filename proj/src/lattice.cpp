#include "tgit/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tgit {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long long x : r) data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: dimension mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
    return from_rows(columns, rows).transpose();
}

IntVector IntMatrix::row(std::size_t r) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
    IntVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

std::vector<IntVector> IntMatrix::row_vectors() const {
    std::vector<IntVector> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_columns(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(target, c) += factor * (*this)(source, c);
}

void IntMatrix::add_column_multiple(std::size_t target, std::size_t source, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, target) += factor * (*this)(r, source);
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_column(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

IntVector operator*(const IntMatrix& a, const IntVector& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    IntVector out(a.rows(), Integer(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * x[k];
    return out;
}

std::string to_string(const IntMatrix& m) {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) os << ',';
        os << to_string(m.row(r));
    }
    os << ']';
    return os.str();
}

std::size_t rank(const IntMatrix& m) { return hermite_rows(m).rows(); }

Integer determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    // Bareiss: every intermediate division is exact.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------- Smith form

std::size_t SmithDecomposition::rank() const {
    std::size_t r = 0;
    const std::size_t k = std::min(D.rows(), D.cols());
    while (r < k && D(r, r) != 0) ++r;
    return r;
}

IntVector SmithDecomposition::invariant_factors() const {
    IntVector out;
    for (std::size_t i = 0; i < rank(); ++i) out.push_back(D(i, i));
    return out;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    IntMatrix d = a;
    IntMatrix u = IntMatrix::identity(m);
    IntMatrix v = IntMatrix::identity(n);

    auto row_swap = [&](std::size_t i, std::size_t j) {
        d.swap_rows(i, j);
        u.swap_rows(i, j);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        d.swap_columns(i, j);
        v.swap_columns(i, j);
    };
    auto row_add = [&](std::size_t t, std::size_t s, const Integer& f) {
        d.add_row_multiple(t, s, f);
        u.add_row_multiple(t, s, f);
    };
    auto col_add = [&](std::size_t t, std::size_t s, const Integer& f) {
        d.add_column_multiple(t, s, f);
        v.add_column_multiple(t, s, f);
    };

    // Smallest |entry| in the trailing block, first in row-major order.
    auto find_pivot = [&](std::size_t t, std::size_t& pr, std::size_t& pc) {
        bool found = false;
        Integer best;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (d(i, j) == 0) continue;
                Integer x = abs(d(i, j));
                if (!found || x < best) {
                    best = x;
                    pr = i;
                    pc = j;
                    found = true;
                }
            }
        return found;
    };

    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
        std::size_t pr = 0, pc = 0;
        if (!find_pivot(t, pr, pc)) break;
        row_swap(t, pr);
        col_swap(t, pc);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d(i, t) == 0) continue;
                row_add(i, t, -(d(i, t) / d(t, t)));
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                col_add(j, t, -(d(t, j) / d(t, t)));
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) {
                // A remainder survived: move the smallest one in row/column t
                // onto the diagonal and keep reducing.
                std::size_t br = t, bc = t;
                Integer best = abs(d(t, t));
                for (std::size_t i = t + 1; i < m; ++i)
                    if (d(i, t) != 0 && abs(d(i, t)) < best) {
                        best = abs(d(i, t));
                        br = i;
                        bc = t;
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (d(t, j) != 0 && abs(d(t, j)) < best) {
                        best = abs(d(t, j));
                        br = t;
                        bc = j;
                    }
                row_swap(t, br);
                col_swap(t, bc);
                continue;
            }
            // Divisibility: d(t,t) must divide the whole trailing block.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        row_add(t, i, Integer(1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    return {std::move(u), std::move(d), std::move(v)};
}

IntMatrix hermite_rows(const IntMatrix& a) {
    IntMatrix h = a;
    const std::size_t m = h.rows();
    const std::size_t n = h.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        for (;;) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i)
                if (h(i, c) != 0 && (best == m || abs(h(i, c)) < abs(h(best, c)))) best = i;
            if (best == m) break;
            h.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (h(i, c) == 0) continue;
                h.add_row_multiple(i, r, -(h(i, c) / h(r, c)));
                if (h(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (r >= m || h(r, c) == 0) continue;
        if (h(r, c) < 0) h.negate_row(r);
        for (std::size_t i = 0; i < r; ++i) h.add_row_multiple(i, r, -floor_div(h(i, c), h(r, c)));
        ++r;
    }
    IntMatrix out(r, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = h(i, j);
    return out;
}

// ---------------------------------------------------------------- Sublattice

Sublattice::Sublattice(std::size_t ambient_rank) : ambient_rank_(ambient_rank), basis_(0, ambient_rank) {}

Sublattice Sublattice::from_generators(std::size_t ambient_rank, const std::vector<IntVector>& generators) {
    Sublattice s(ambient_rank);
    s.basis_ = hermite_rows(IntMatrix::from_rows(generators, ambient_rank));
    const auto snf = smith_normal_form(s.basis_);
    const auto factors = snf.invariant_factors();
    s.saturated_ = std::all_of(factors.begin(), factors.end(), [](const Integer& x) { return x == 1; });
    return s;
}

bool Sublattice::contains(const IntVector& v) const {
    return solve_integer(basis_.transpose(), v).has_value();
}

LatticeMap::LatticeMap(IntMatrix m) : matrix(std::move(m)), source_rank(matrix.cols()), target_rank(matrix.rows()) {}

Sublattice kernel_basis(const IntMatrix& a) {
    const auto snf = smith_normal_form(a);
    const std::size_t r = snf.rank();
    std::vector<IntVector> gens;
    for (std::size_t j = r; j < a.cols(); ++j) gens.push_back(snf.V.column(j));
    return Sublattice::from_generators(a.cols(), gens);
}

Sublattice saturate(const Sublattice& s) {
    if (s.rank() == 0) return Sublattice(s.ambient_rank());
    const Sublattice orthogonal = kernel_basis(s.basis());
    return kernel_basis(orthogonal.basis());
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: dimension mismatch");
    const auto snf = smith_normal_form(a);
    const IntVector c = snf.U * b;
    const std::size_t r = snf.rank();
    IntVector y(a.cols(), Integer(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i < r) {
            if (c[i] % snf.D(i, i) != 0) return std::nullopt;
            y[i] = c[i] / snf.D(i, i);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return snf.V * y;
}

CokernelProjection cokernel_projection(const Sublattice& s) {
    const std::size_t n = s.ambient_rank();
    const auto snf = smith_normal_form(s.basis().transpose());
    const std::size_t r = snf.rank();
    std::vector<IntVector> rows;
    for (std::size_t i = r; i < n; ++i) rows.push_back(snf.U.row(i));
    CokernelProjection out;
    out.projection = LatticeMap(hermite_rows(IntMatrix::from_rows(rows, n)));
    for (const auto& f : snf.invariant_factors())
        if (f > 1) out.torsion.push_back(f);
    return out;
}

}  // namespace tgit
