#include "random.hpp"
#include "tgit/lattice.hpp"

#include <doctest.h>

#include <array>

using namespace tgit;

namespace {

bool is_diagonal_chain(const IntMatrix& d) {
    for (std::size_t r = 0; r < d.rows(); ++r)
        for (std::size_t c = 0; c < d.cols(); ++c)
            if (r != c && d(r, c) != 0) return false;
    const std::size_t k = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i < k; ++i) {
        if (d(i, i) < 0) return false;
        if (i + 1 < k) {
            if (d(i, i) == 0 && d(i + 1, i + 1) != 0) return false;
            if (d(i, i) != 0 && d(i + 1, i + 1) % d(i, i) != 0) return false;
        }
    }
    return true;
}

// The subtorus map of the quadric example: columns (2,1,1) and (0,2,1).
const IntMatrix kPhi{{2, 0}, {1, 2}, {1, 1}};

}  // namespace

TEST_CASE("smith normal form of the quadric weight map") {
    const auto snf = smith_normal_form(kPhi);
    CHECK(snf.U * kPhi * snf.V == snf.D);
    CHECK(snf.invariant_factors() == IntVector{1, 1});
    CHECK(snf.D == IntMatrix{{1, 0}, {0, 1}, {0, 0}});
}

TEST_CASE("smith normal form edge cases") {
    const IntMatrix zero(2, 3);
    const auto z = smith_normal_form(zero);
    CHECK(z.D == zero);
    CHECK(z.U == IntMatrix::identity(2));
    CHECK(z.V == IntMatrix::identity(3));

    const auto two = smith_normal_form(IntMatrix{{2}});
    CHECK(two.D == IntMatrix{{2}});

    const auto empty = smith_normal_form(IntMatrix(0, 3));
    CHECK(empty.rank() == 0);
    CHECK(empty.V == IntMatrix::identity(3));
}

TEST_CASE("smith normal form certificate identity on random matrices") {
    testing::Random rng(0x5eed);
    for (int trial = 0; trial < 600; ++trial) {
        const std::size_t m = rng.uniform(0, 4);
        const std::size_t n = rng.uniform(0, 4);
        const IntMatrix a = rng.matrix(m, n, -9, 9);
        const auto snf = smith_normal_form(a);
        REQUIRE(snf.U * a * snf.V == snf.D);
        REQUIRE(abs(determinant(snf.U)) == 1);
        REQUIRE(abs(determinant(snf.V)) == 1);
        REQUIRE(is_diagonal_chain(snf.D));
        REQUIRE(snf.rank() == rank(a));
    }
}

TEST_CASE("determinant agrees with cofactor expansion") {
    testing::Random rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const IntMatrix a = rng.matrix(3, 3, -5, 5);
        const Integer expected = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                                 a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                                 a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
        REQUIRE(determinant(a) == expected);
    }
}

TEST_CASE("kernel basis") {
    const auto k = kernel_basis(kPhi.transpose());
    REQUIRE(k.rank() == 1);
    CHECK(k.basis().row(0) == IntVector{1, 2, -4});
    CHECK(k.saturated());

    CHECK(kernel_basis(IntMatrix::identity(3)).rank() == 0);
    const auto line = kernel_basis(IntMatrix{{1, 1}});
    REQUIRE(line.rank() == 1);
    CHECK(line.basis().row(0) == IntVector{1, -1});
}

TEST_CASE("kernel rank plus matrix rank equals column count") {
    testing::Random rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const IntMatrix a = rng.matrix(rng.uniform(1, 4), rng.uniform(1, 5), -4, 4);
        const auto k = kernel_basis(a);
        REQUIRE(k.rank() + rank(a) == a.cols());
        for (const auto& v : k.basis().row_vectors()) REQUIRE(is_zero(a * v));
        REQUIRE(k.saturated());
    }
}

TEST_CASE("saturate") {
    const auto image = Sublattice::from_generators(3, {kPhi.column(0), kPhi.column(1)});
    CHECK(image.saturated());
    CHECK(saturate(image) == image);

    const auto doubled = Sublattice::from_generators(2, {{2, 0}});
    CHECK_FALSE(doubled.saturated());
    CHECK(saturate(doubled).basis() == IntMatrix{{1, 0}});

    CHECK(saturate(Sublattice(4)).rank() == 0);
}

TEST_CASE("saturate is idempotent, extensive and of finite index") {
    testing::Random rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = rng.uniform(1, 4);
        std::vector<IntVector> gens;
        for (long long g = rng.uniform(0, 3); g > 0; --g) gens.push_back(rng.vector(n, -6, 6));
        const auto s = Sublattice::from_generators(n, gens);
        const auto sat = saturate(s);
        REQUIRE(saturate(sat) == sat);
        REQUIRE(sat.rank() == s.rank());
        for (const auto& v : s.basis().row_vectors()) REQUIRE(sat.contains(v));
        REQUIRE(sat.saturated());
    }
}

TEST_CASE("solve_integer examples") {
    const IntMatrix quadric{{1, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 0, 1}};
    CHECK_FALSE(solve_integer(quadric, {-1, 0, 0, 0}).has_value());

    const auto zero = solve_integer(quadric, {0, 0, 0, 0});
    REQUIRE(zero);
    CHECK(is_zero(*zero));

    const auto single = solve_integer(IntMatrix{{1, 0, 0}}, {-1});
    REQUIRE(single);
    CHECK(*single == IntVector{-1, 0, 0});

    CHECK_FALSE(solve_integer(IntMatrix{{2}}, {3}).has_value());
}

TEST_CASE("solve_integer is sound and complete against boxed exhaustive search") {
    testing::Random rng(2024);
    constexpr long long kHalf = 10;  // box of side 20
    int solvable = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::array<std::array<long long, 4>, 4> a{};
        IntMatrix m(4, 4);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) m(r, c) = a[r][c] = rng.uniform(-3, 3);
        std::array<long long, 4> b{};
        if (rng.coin()) {
            for (int r = 0; r < 4; ++r) b[r] = rng.uniform(-6, 6);
        } else {
            std::array<long long, 4> x0{};
            for (auto& x : x0) x = rng.uniform(-3, 3);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) b[r] += a[r][c] * x0[c];
        }
        bool brute = false;
        for (long long x0 = -kHalf; x0 < kHalf && !brute; ++x0)
            for (long long x1 = -kHalf; x1 < kHalf && !brute; ++x1)
                for (long long x2 = -kHalf; x2 < kHalf && !brute; ++x2)
                    for (long long x3 = -kHalf; x3 < kHalf && !brute; ++x3) {
                        bool ok = true;
                        for (int r = 0; r < 4 && ok; ++r)
                            ok = a[r][0] * x0 + a[r][1] * x1 + a[r][2] * x2 + a[r][3] * x3 == b[r];
                        brute = ok;
                    }
        const IntVector rhs{b[0], b[1], b[2], b[3]};
        const auto x = solve_integer(m, rhs);
        if (x) REQUIRE(m * *x == rhs);
        if (brute) {
            ++solvable;
            REQUIRE(x.has_value());
        }
    }
    CHECK(solvable > 10);
}

TEST_CASE("cokernel projection") {
    const auto l = saturate(Sublattice::from_generators(3, {kPhi.column(0), kPhi.column(1)}));
    const auto coker = cokernel_projection(l);
    CHECK(coker.projection.matrix == IntMatrix{{1, 2, -4}});
    CHECK(coker.torsion.empty());
    CHECK((coker.projection.matrix * kPhi).is_zero());

    const auto full = cokernel_projection(Sublattice::from_generators(2, {{1, 0}, {0, 1}}));
    CHECK(full.projection.target_rank == 0);
    CHECK(full.projection.source_rank == 2);

    const auto none = cokernel_projection(Sublattice(3));
    CHECK(none.projection.matrix == IntMatrix::identity(3));

    const auto torsion = cokernel_projection(Sublattice::from_generators(2, {{2, 0}}));
    CHECK(torsion.torsion == IntVector{2});
    CHECK(torsion.projection.matrix == IntMatrix{{0, 1}});
}
