#include "fixtures.hpp"
#include "instances.hpp"
#include "tgit/quotient.hpp"

#include <doctest.h>

using namespace tgit;
using namespace tgit::testing;

TEST_CASE("quadric: quotient of the target locus is the projective line") {
    const Fan fan = quadric_fan();
    const auto action = quadric_action();
    const auto ss = semistable_divisor(quadric_divisor(), {}, action, fan);
    const auto q = build_quotient(ss, action, fan);
    CHECK(q.projection.matrix == IntMatrix{{1, 2, -4}});
    CHECK((q.projection.matrix * action.phi()).is_zero());
    REQUIRE(q.charts.size() == 2);
    CHECK(q.charts[0].image == Cone::from_generators(1, {{1}}));
    CHECK(q.charts[1].image == Cone::from_generators(1, {{-1}}));
    REQUIRE(q.gluings.size() == 1);
    CHECK(q.gluings[0].image == Cone::zero(1));
    CHECK(q.good);
    CHECK(q.geometric);
    CHECK(q.separated);
    CHECK(q.torsion.empty());
    REQUIRE(q.quotient_fan);
    CHECK(q.quotient_fan->is_complete());
    CHECK(q.quotient_fan->lattice_rank() == 1);
    CHECK(q.quotient_fan->maximal_cones().size() == 2);
    CHECK(is_separated(q));
}

TEST_CASE("orbit images") {
    const Fan fan = quadric_fan();
    const LatticeMap pi(IntMatrix{{1, 2, -4}});
    const Cone chart = image(fan.cone({0}), pi);
    CHECK(orbit_image(fan.cone({0}), chart, pi) == Cone::from_generators(1, {{1}}));
    CHECK(orbit_image(fan.cone({}), chart, pi) == Cone::zero(1));
    const Cone whole = image(fan.cone({0, 1, 2, 3}), pi);
    CHECK(orbit_image(fan.cone({0, 1, 2, 3}), whole, pi) == whole);

    const Fan plane = plane_fan();
    const LatticeMap sum(IntMatrix{{1, 1}});
    CHECK(orbit_image(plane.cone({1}), image(plane.cone({1}), sum), sum) == Cone::from_generators(1, {{1}}));
}

TEST_CASE("saturation") {
    const Fan plane = plane_fan();
    const LatticeMap sum(IntMatrix{{1, 1}});
    CHECK(is_saturated({{}}, {1}, plane, sum));
    CHECK(is_saturated({{}, {1}}, {1}, plane, sum));
    // The full torus: everything maps to a point.
    const LatticeMap none(IntMatrix(0, 2));
    CHECK_FALSE(is_saturated({{}}, {0, 1}, plane, none));
    CHECK(is_saturated(plane.faces_of({0, 1}), {0, 1}, plane, none));
}

TEST_CASE("plane: affine line and doubled affine line") {
    const Fan fan = plane_fan();
    const auto action = hyperbolic_action();
    const auto single = build_quotient(semistable_divisor(plane_divisor(), {}, action, fan), action, fan);
    REQUIRE(single.charts.size() == 1);
    CHECK(single.charts[0].image == Cone::from_generators(1, {{1}}));
    CHECK(single.good);
    CHECK(single.geometric);
    CHECK(single.separated);
    REQUIRE(single.quotient_fan);
    CHECK(single.quotient_fan->is_affine());
    CHECK_FALSE(single.quotient_fan->is_complete());

    const auto doubled =
        build_quotient(semistable_group(DivisorGroup({plane_divisor()}), {}, action, fan), action, fan);
    REQUIRE(doubled.charts.size() == 2);
    CHECK(doubled.charts[0].image == doubled.charts[1].image);
    REQUIRE(doubled.gluings.size() == 1);
    CHECK(doubled.gluings[0].image == Cone::zero(1));
    CHECK(doubled.good);
    CHECK_FALSE(doubled.separated);
    CHECK_FALSE(is_separated(doubled));
    CHECK_FALSE(doubled.quotient_fan);
}

TEST_CASE("torsion in the action map is reported") {
    const Fan fan = plane_fan();
    const SubtorusAction action(IntMatrix{{2}, {0}});
    const auto q = build_quotient(mumford_trivial_semistable({0}, action, fan), action, fan);
    CHECK(q.torsion == IntVector{2});
    CHECK(q.diagnostics.front().rfind("TorsionWarning", 0) == 0);
}

TEST_CASE("trivial bundle at the zero character: the quotient is a point") {
    const Fan fan = quadric_fan();
    const auto action = quadric_action();
    const auto q = build_quotient(mumford_trivial_semistable({0, 0}, action, fan), action, fan);
    REQUIRE(q.charts.size() == 1);
    CHECK(q.good);
    CHECK_FALSE(q.geometric);
    REQUIRE(q.quotient_fan);
    CHECK(q.quotient_fan->lattice_rank() == 0);
}

TEST_CASE("random instances: engine loci have good quotients") {
    Random rng(2718);
    int charts = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const auto in = random_instance(rng);
        const auto ss = semistable_divisor(in.divisor, in.lin, in.action, in.fan);
        const auto q = build_quotient(ss, in.action, in.fan);
        for (const auto& d : q.diagnostics) INFO(d);
        REQUIRE(q.good);
        REQUIRE(is_separated(q) == q.separated);
        if (q.separated && !q.charts.empty()) REQUIRE(q.quotient_fan.has_value());
        charts += static_cast<int>(q.charts.size());

        const auto gs = semistable_group(DivisorGroup({in.divisor}), in.lin, in.action, in.fan);
        REQUIRE(build_quotient(gs, in.action, in.fan).good);

        // Orbit images respect face containment.
        for (const auto& a : q.orbit_map)
            for (const auto& b : q.orbit_map) {
                if (a.chart != b.chart) continue;
                if (!std::includes(b.face.begin(), b.face.end(), a.face.begin(), a.face.end())) continue;
                REQUIRE(intersect(a.image, b.image) == a.image);
            }
    }
    CHECK(charts > 50);
}
