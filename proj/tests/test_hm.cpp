#include "fixtures.hpp"
#include "random.hpp"
#include "tgit/hm.hpp"

#include <doctest.h>

#include <functional>

using namespace tgit;
using namespace tgit::testing;

namespace {

LinearAction quadric_ambient() { return LinearAction(2, {{2, 0}, {1, 2}, {1, 1}, {2, 1}}); }

PointPattern full(std::size_t n) {
    PointPattern p;
    for (std::size_t i = 0; i < n; ++i) p.support.push_back(i);
    return p;
}

bool is_origin(const PointPattern& p) { return p.support.empty(); }

}  // namespace

TEST_CASE("limits along one-parameter subgroups") {
    const auto act = quadric_ambient();
    const auto l = limit({1, 0}, full(4), act);
    REQUIRE(l);
    CHECK(l->support.empty());
    CHECK(limit({0, 0}, full(4), act) == full(4));
    CHECK_FALSE(limit({0, -1}, PointPattern{{1}}, act).has_value());
    const auto partial = limit({1, -1}, full(4), act);
    CHECK_FALSE(partial.has_value());
    CHECK(limit({0, 1}, full(4), act) == PointPattern{{0}});
}

TEST_CASE("destabilizing subgroups") {
    const auto act = quadric_ambient();
    const auto lambda = destabilize(full(4), is_origin, act);
    REQUIRE(lambda);
    CHECK(*lambda == IntVector{1, 0});

    const LinearAction hyperbolic(1, {{1}, {-1}});
    CHECK_FALSE(destabilize(full(2), is_origin, hyperbolic).has_value());
    CHECK(destabilize(PointPattern{{0}}, is_origin, hyperbolic) == IntVector{1});

    const auto zero = destabilize(PointPattern{}, is_origin, act);
    REQUIRE(zero);
    CHECK(is_zero(*zero));
}

TEST_CASE("hilbert bases") {
    CHECK(hilbert_basis(Cone::from_generators(2, {{1, 0}, {0, 1}})) == std::vector<IntVector>{{0, 1}, {1, 0}});
    CHECK(hilbert_basis(Cone::from_generators(2, {{1, 0}, {1, 2}})) ==
          std::vector<IntVector>{{1, 0}, {1, 1}, {1, 2}});
    // Dual of the quadric cone: four generators.
    const Cone dual_quadric = Cone::from_inequalities(3, {{1, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 0, 1}});
    CHECK(hilbert_basis(dual_quadric).size() == 4);
    CHECK(hilbert_basis(Cone::from_generators(2, {{1, 0}, {1, 5}})).size() == 6);
    CHECK_THROWS_AS(hilbert_basis(Cone::from_generators(2, {{1, 0}, {1, 5}}), 3), HilbertBasisTooLarge);
    CHECK(hilbert_basis(Cone::zero(3)).empty());
}

TEST_CASE("cross-validation on the worked examples") {
    const auto quadric = cross_validate(quadric_fan(), quadric_action(), quadric_divisor(), {});
    CHECK(quadric.faces.size() == 10);
    CHECK(quadric.sound);
    CHECK(quadric.agree);
    for (const auto& f : quadric.faces) CHECK(f.ambient == quadric_target().contains(f.face));

    const auto plane = cross_validate(plane_fan(), hyperbolic_action(), plane_divisor(), {});
    CHECK(plane.faces.size() == 4);
    CHECK(plane.sound);
    CHECK(plane.agree);

    const auto trivial = cross_validate(quadric_fan(), SubtorusAction::trivial(3), {{0, 0, 0, 0}}, {});
    CHECK(trivial.agree);
    for (const auto& f : trivial.faces) CHECK(f.ambient);
}

TEST_CASE("destabilizers replay and scale") {
    Random rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t d = rng.uniform(1, 3);
        const std::size_t n = rng.uniform(1, 6);
        std::vector<IntVector> w;
        for (std::size_t i = 0; i < n; ++i) w.push_back(rng.vector(d, -4, 4));
        const LinearAction act(d, w);
        PointPattern p;
        for (std::size_t i = 0; i < n; ++i)
            if (rng.coin()) p.support.push_back(i);
        const auto lambda = destabilize(p, is_origin, act);
        if (lambda) {
            const auto l = limit(*lambda, p, act);
            REQUIRE(l);
            REQUIRE(is_origin(*l));
        }
        const IntVector probe = rng.vector(d, -3, 3);
        const auto a = limit(probe, p, act);
        const auto b = limit(scale(3, probe), p, act);
        REQUIRE(a.has_value() == b.has_value());
        if (a) REQUIRE(*a == *b);
    }
}

TEST_CASE("destabilize agrees with a boxed search") {
    Random rng(4711);
    static constexpr long long kHalf = 5;  // side 10
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t d = rng.uniform(1, 3);
        const std::size_t n = rng.uniform(1, 6);
        std::vector<IntVector> w;
        for (std::size_t i = 0; i < n; ++i) w.push_back(rng.vector(d, -4, 4));
        const LinearAction act(d, w);
        const PointPattern p = full(n);
        // Target: the first coordinate survives nowhere.
        const PatternPredicate target = [](const PointPattern& q) {
            return q.support.empty() || q.support.front() != 0;
        };
        bool brute = false;
        IntVector lambda(d);
        std::function<void(std::size_t)> walk = [&](std::size_t i) {
            if (brute) return;
            if (i == d) {
                const auto l = limit(lambda, p, act);
                brute = l && target(*l);
                return;
            }
            for (long long v = -kHalf; v <= kHalf && !brute; ++v) {
                lambda[i] = v;
                walk(i + 1);
            }
        };
        walk(0);
        const auto found = destabilize(p, target, act);
        if (found) {
            const auto l = limit(*found, p, act);
            REQUIRE(l);
            REQUIRE(target(*l));
        }
        if (brute) REQUIRE(found.has_value());
        if (found && !brute) {
            const bool outside = std::any_of(found->begin(), found->end(), [](const Integer& x) { return abs(x) > kHalf; });
            REQUIRE(outside);
        }
    }
}
