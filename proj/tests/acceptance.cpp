// Acceptance suite: one PASS/FAIL line per criterion.
#include "fixtures.hpp"
#include "instances.hpp"
#include "oracle_bridge.hpp"
#include "tgit/certificate.hpp"
#include "tgit/hm.hpp"
#include "tgit/quotient.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>

using namespace tgit;
using namespace tgit::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Records the first failed expectation.
class Expect {
public:
    void operator()(bool ok, const std::string& what) {
        if (!ok && outcome_.pass) {
            outcome_.pass = false;
            outcome_.detail = what;
        }
    }
    bool ok() const { return outcome_.pass; }
    Outcome done(const std::string& summary) {
        if (outcome_.pass) outcome_.detail = summary;
        return outcome_;
    }

private:
    Outcome outcome_;
};

SubfanLocus locus_of(std::initializer_list<FaceKey> keys) { return SubfanLocus(std::set<FaceKey>(keys)); }

bool row_equivalent(const IntMatrix& p, const IntVector& row) {
    if (p.rows() != 1) return false;
    const IntVector r = p.row_vectors().front();
    return r == row || r == negate(row);
}

Outcome criterion_quadric() {
    Expect expect;
    const Fan fan = quadric_fan();
    const auto action = quadric_action();
    const auto ss = semistable_divisor(quadric_divisor(), {}, action, fan);
    expect(ss.locus == quadric_target(), "locus " + to_string(ss.locus));
    const auto q = build_quotient(ss, action, fan);
    expect(q.quotient_fan && q.quotient_fan->lattice_rank() == 1 && q.quotient_fan->is_complete(),
           "quotient is not the complete rank-1 fan");
    expect(q.good && q.geometric && q.separated, "quotient flags");
    expect(row_equivalent(q.projection.matrix, {1, 2, -4}), "projection");
    expect((q.projection.matrix * action.phi()).is_zero(), "P phi != 0");
    return expect.done("locus {[], [0], [2]}, quotient P^1, projection (1,2,-4)");
}

Outcome criterion_obstruction() {
    Expect expect;
    const Fan fan = quadric_fan();
    const auto action = quadric_action();
    const auto r = obstruction_report(quadric_target(), action, fan);
    expect(achievable_weights({0}, action, fan) == Cone::from_generators(2, {{1, 1}, {1, 2}}), "K at ray 0");
    expect(achievable_weights({2}, action, fan) == Cone::from_generators(2, {{2, 0}, {2, 1}}), "K at ray 2");
    expect(r.common.is_zero(), "achievable weights meet beyond zero");
    expect(!r.realizing_character, "a character realizes U");
    const auto chambers = git_chambers(action, fan);
    for (const auto& c : chambers) expect(c.locus.locus != quadric_target(), "chamber locus equals U");
    const auto cg = class_group(fan);
    expect(cg.picard_rank == 0 && cg.picard_torsion.empty(), "Pic != 0");
    expect(cg.rank == 1 && cg.torsion.empty(), "Cl != Z");
    return expect.done(std::to_string(chambers.size()) + " chambers, none yields U; Pic = 0, Cl = Z");
}

Outcome criterion_intro() {
    Expect expect;
    const Fan fan = plane_fan();
    const auto action = hyperbolic_action();
    const auto single = semistable_divisor(plane_divisor(), {}, action, fan);
    expect(single.locus == locus_of({{}, {1}}), "X^ss(D) = " + to_string(single.locus));
    const auto qs = build_quotient(single, action, fan);
    expect(qs.good && qs.geometric && qs.separated, "A^1 quotient flags");
    expect(qs.quotient_fan && qs.quotient_fan->ray_count() == 1 && qs.quotient_fan->maximal_cones().size() == 1,
           "quotient is not A^1");
    const auto group = semistable_group(DivisorGroup({plane_divisor()}), {}, action, fan);
    expect(group.locus == locus_of({{}, {0}, {1}}), "X^ss(ZD) = " + to_string(group.locus));
    const auto qg = build_quotient(group, action, fan);
    expect(qg.charts.size() == 2 && qg.charts[0].image == qg.charts[1].image, "charts do not share one ray");
    expect(qg.good && !qg.separated, "doubled line flags");
    expect(single.locus.is_subset_of(group.locus) && single.locus != group.locus, "inclusion not strict");
    return expect.done("X^ss(D) = {[], [1]} (A^1) strictly inside X^ss(ZD) = {[], [0], [1]} (doubled line)");
}

Outcome criterion_replay() {
    Expect expect;
    std::size_t certificates = 0;
    auto replay = [&](const SemistableLocus& ss, const std::vector<ToricDivisor>& basis, const Linearization& lin,
                      const SubtorusAction& action, const Fan& fan, const std::string& where) {
        const auto r = check_locus(ss, basis, lin, action, fan);
        expect(r.ok(), where + ": " + (r.failures.empty() ? "" : r.failures.front()));
        certificates += ss.certificates.size();
    };
    {
        const Fan fan = quadric_fan();
        const auto action = quadric_action();
        replay(semistable_divisor(quadric_divisor(), {}, action, fan), {quadric_divisor()}, {}, action, fan, "quadric");
        replay(semistable_group(DivisorGroup({quadric_divisor()}), {}, action, fan), {quadric_divisor()}, {}, action, fan,
               "quadric group");
        for (const auto& c : git_chambers(action, fan))
            replay(c.locus, {{zero_vector(4)}}, {{negate(c.sample)}}, action, fan, "quadric chamber");
        const Fan plane = plane_fan();
        const auto hyp = hyperbolic_action();
        replay(semistable_divisor(plane_divisor(), {}, hyp, plane), {plane_divisor()}, {}, hyp, plane, "intro");
        replay(semistable_group(DivisorGroup({plane_divisor()}), {}, hyp, plane), {plane_divisor()}, {}, hyp, plane,
               "intro group");
    }
    Random rng(20240);
    for (int trial = 0; trial < 200; ++trial) {
        const auto in = random_instance(rng);
        const std::string where = "random instance " + std::to_string(trial);
        replay(semistable_divisor(in.divisor, in.lin, in.action, in.fan), {in.divisor}, in.lin, in.action, in.fan, where);
        replay(semistable_group(DivisorGroup({in.divisor}), in.lin, in.action, in.fan), {in.divisor}, in.lin, in.action,
               in.fan, where + " (group)");
    }
    return expect.done(std::to_string(certificates) + " certificates replayed (fixtures + 200 random instances)");
}

Outcome criterion_oracle() {
    Expect expect;
    {
        const auto in = to_oracle(quadric_fan(), quadric_action(), {quadric_divisor()}, {}, false);
        const auto found = oracle::enumerate_witnesses(in, {4, 16, 3});
        expect(to_locus(found.faces) == quadric_target(), "quadric oracle locus " + to_string(to_locus(found.faces)));
        const auto plane = to_oracle(plane_fan(), hyperbolic_action(), {plane_divisor()}, {}, false);
        const auto single = oracle::enumerate_witnesses(plane, {2, 4, 3});
        expect(to_locus(single.faces) == semistable_divisor(plane_divisor(), {}, hyperbolic_action(), plane_fan()).locus,
               "intro oracle locus");
        auto group = plane;
        group.group = true;
        expect(to_locus(oracle::enumerate_witnesses(group, {2, 4, 3}).faces) ==
                   semistable_group(DivisorGroup({plane_divisor()}), {}, hyperbolic_action(), plane_fan()).locus,
               "intro group oracle locus");
    }
    Random rng(31337);
    std::size_t violations = 0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
        const auto in = random_instance(rng);
        const auto engine = semistable_divisor(in.divisor, in.lin, in.action, in.fan).locus;
        const auto found = oracle::enumerate_witnesses(to_oracle(in.fan, in.action, {in.divisor}, in.lin, false), {3, 3, 2});
        if (!to_locus(found.faces).is_subset_of(engine)) ++violations;
        const auto gengine = semistable_group(DivisorGroup({in.divisor}), in.lin, in.action, in.fan).locus;
        const auto gfound = oracle::enumerate_witnesses(to_oracle(in.fan, in.action, {in.divisor}, in.lin, true), {3, 3, 2});
        if (!to_locus(gfound.faces).is_subset_of(gengine)) ++violations;
    }
    expect(violations == 0, std::to_string(violations) + " oracle loci outside the engine locus");
    return expect.done("fixtures equal; " + std::to_string(2 * trials) + " random loci, 0 violations");
}

// ---------------------------------------------------------------- property suites

constexpr int kCases = 500;

bool is_diagonal_chain(const IntMatrix& d) {
    for (std::size_t r = 0; r < d.rows(); ++r)
        for (std::size_t c = 0; c < d.cols(); ++c)
            if (r != c && d(r, c) != 0) return false;
    const std::size_t k = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i + 1 < k; ++i) {
        if (d(i, i) < 0) return false;
        if (d(i, i) == 0 && d(i + 1, i + 1) != 0) return false;
        if (d(i, i) != 0 && d(i + 1, i + 1) % d(i, i) != 0) return false;
    }
    return true;
}

void property_snf(Expect& expect) {
    Random rng(1);
    for (int t = 0; t < kCases && expect.ok(); ++t) {
        const IntMatrix a = rng.matrix(rng.uniform(0, 4), rng.uniform(0, 4), -9, 9);
        const auto snf = smith_normal_form(a);
        expect(snf.U * a * snf.V == snf.D, "SNF identity U A V = D");
        expect(abs(determinant(snf.U)) == 1 && abs(determinant(snf.V)) == 1, "SNF unimodularity");
        expect(is_diagonal_chain(snf.D), "SNF divisibility chain");
    }
}

void property_dual(Expect& expect) {
    Random rng(2);
    for (int t = 0; t < kCases && expect.ok(); ++t) {
        const std::size_t n = rng.uniform(1, 4);
        std::vector<IntVector> gens;
        for (long long g = rng.uniform(1, 8); g > 0; --g) gens.push_back(rng.vector(n, -3, 3));
        const Cone c = Cone::from_generators(n, gens);
        expect(c.dual().dual() == c, "dual of dual");
    }
}

void property_feasibility(Expect& expect) {
    Random rng(3);
    static constexpr long long kHalf = 6;
    for (int t = 0; t < kCases && expect.ok(); ++t) {
        FeasibilitySystem sys;
        sys.dimension = rng.uniform(1, 3);
        const std::size_t n = sys.dimension;
        for (long long i = rng.uniform(0, 1); i > 0; --i) sys.equalities.push_back(rng.vector(n, -2, 2));
        for (long long i = rng.uniform(0, 3); i > 0; --i) sys.weak_inequalities.push_back(rng.vector(n, -2, 2));
        for (long long i = rng.uniform(0, 3); i > 0; --i) sys.strict_inequalities.push_back(rng.vector(n, -2, 2));
        auto satisfies = [&](const IntVector& x) {
            for (const auto& e : sys.equalities)
                if (dot(e, x) != 0) return false;
            for (const auto& w : sys.weak_inequalities)
                if (dot(w, x) < 0) return false;
            for (const auto& s : sys.strict_inequalities)
                if (dot(s, x) <= 0) return false;
            return true;
        };
        bool brute = false;
        IntVector x(n);
        std::function<void(std::size_t)> walk = [&](std::size_t i) {
            if (brute) return;
            if (i == n) {
                brute = satisfies(x);
                return;
            }
            for (long long v = -kHalf; v <= kHalf && !brute; ++v) {
                x[i] = v;
                walk(i + 1);
            }
        };
        walk(0);
        const auto w = feasible_strict(sys);
        if (w) expect(satisfies(*w), "feasible_strict witness violates the system");
        if (brute) expect(w.has_value(), "feasible_strict missed a boxed solution");
        if (w && !brute)
            expect(std::any_of(w->begin(), w->end(), [](const Integer& v) { return abs(v) > kHalf; }),
                   "feasible_strict found a point the box search missed inside the box");
    }
}

void property_scale(Expect& expect) {
    Random rng(4);
    for (int t = 0; t < kCases && expect.ok(); ++t) {
        const auto in = random_instance(rng);
        const auto base = semistable_divisor(in.divisor, in.lin, in.action, in.fan).locus;
        const long long k = rng.uniform(2, 4);
        const ToricDivisor kd{scale(k, in.divisor.coefficients)};
        const auto scaled = semistable_divisor(kd, {{scale(k, in.lin.shifts[0])}}, in.action, in.fan).locus;
        expect(base.is_subset_of(scaled), "X^ss(D) not inside X^ss(kD)");
        if (cartier_locus(DivisorGroup({in.divisor}), in.fan) == cartier_locus(DivisorGroup({kd}), in.fan))
            expect(scaled == base, "X^ss(kD) != X^ss(D) with equal Cartier loci");
    }
}

void property_equivariance(Expect& expect) {
    Random rng(5);
    for (int t = 0; t < kCases && expect.ok(); ++t) {
        const auto in = random_instance(rng);
        const IntMatrix g = rng.unimodular(in.fan.lattice_rank());
        const IntMatrix h = rng.unimodular(in.action.dimension());
        RawFan raw = in.fan.raw();
        for (auto& v : raw.rays) v = g * v;
        const Fan fan = Fan::validate(raw);
        const SubtorusAction action(g * in.action.phi() * h);
        const Linearization lin{{h.transpose() * in.lin.shifts[0]}};
        expect(semistable_divisor(in.divisor, lin, action, fan).locus ==
                   semistable_divisor(in.divisor, in.lin, in.action, in.fan).locus,
               "locus changed under a unimodular change of coordinates");
    }
}

void property_good(Expect& expect) {
    Random rng(6);
    for (int t = 0; t < kCases && expect.ok(); ++t) {
        const auto in = random_instance(rng);
        const auto ss = semistable_divisor(in.divisor, in.lin, in.action, in.fan);
        expect(build_quotient(ss, in.action, in.fan).good, "engine locus without a good quotient");
        const auto gs = semistable_group(DivisorGroup({in.divisor}), in.lin, in.action, in.fan);
        expect(build_quotient(gs, in.action, in.fan).good, "engine group locus without a good quotient");
    }
}

void property_hm(Expect& expect) {
    Random rng(7);
    static constexpr long long kHalf = 5;
    for (int t = 0; t < kCases && expect.ok(); ++t) {
        const std::size_t d = rng.uniform(1, 3);
        const std::size_t n = rng.uniform(1, 6);
        std::vector<IntVector> w;
        for (std::size_t i = 0; i < n; ++i) w.push_back(rng.vector(d, -4, 4));
        const LinearAction act(d, w);
        PointPattern p;
        for (std::size_t i = 0; i < n; ++i)
            if (rng.coin()) p.support.push_back(i);
        const PatternPredicate origin = [](const PointPattern& q) { return q.support.empty(); };
        if (const auto lambda = destabilize(p, origin, act)) {
            const auto l = limit(*lambda, p, act);
            expect(l && l->support.empty(), "destabilizer does not replay");
        }
        const IntVector probe = rng.vector(d, -3, 3);
        const auto a = limit(probe, p, act);
        const auto b = limit(scale(3, probe), p, act);
        expect(a.has_value() == b.has_value() && (!a || *a == *b), "limit not scale invariant");

        bool brute = false;
        IntVector lambda(d);
        std::function<void(std::size_t)> walk = [&](std::size_t i) {
            if (brute) return;
            if (i == d) {
                const auto l = limit(lambda, p, act);
                brute = l && l->support.empty();
                return;
            }
            for (long long v = -kHalf; v <= kHalf && !brute; ++v) {
                lambda[i] = v;
                walk(i + 1);
            }
        };
        walk(0);
        const auto found = destabilize(p, origin, act);
        if (brute) expect(found.has_value(), "destabilize missed a boxed destabilizer");
        if (found && !brute)
            expect(std::any_of(found->begin(), found->end(), [](const Integer& v) { return abs(v) > kHalf; }),
                   "destabilize disagrees with the boxed search");
    }
}

Outcome criterion_properties() {
    Expect expect;
    const std::vector<std::pair<std::string, std::function<void(Expect&)>>> suites{
        {"snf", property_snf},         {"dual", property_dual},
        {"feasibility", property_feasibility}, {"scale", property_scale},
        {"equivariance", property_equivariance}, {"good", property_good},
        {"hm", property_hm}};
    for (const auto& [name, suite] : suites) {
        Expect local;
        suite(local);
        const auto o = local.done("");
        expect(o.pass, name + ": " + o.detail);
    }
    return expect.done(std::to_string(suites.size()) + " suites x " + std::to_string(kCases) +
                       " cases (scale invariance in the Cartier-compatible form)");
}

Outcome criterion_cross_validation() {
    Expect expect;
    const auto q = cross_validate(quadric_fan(), quadric_action(), quadric_divisor(), {});
    expect(q.agree, "quadric: toric and ambient loci differ");
    const auto p = cross_validate(plane_fan(), hyperbolic_action(), plane_divisor(), {});
    expect(p.agree, "intro: toric and ambient loci differ");
    return expect.done("all " + std::to_string(q.faces.size() + p.faces.size()) + " faces agree");
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        std::string name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "quadric semistable locus and P^1 quotient", 1, criterion_quadric},
        {2, "quadric obstruction, chambers and class groups", 1, criterion_obstruction},
        {3, "affine plane example: A^1 and the doubled line", 1, criterion_intro},
        {4, "certificate replay", 60, criterion_replay},
        {5, "oracle agreement", 0, criterion_oracle},
        {6, "property suites", 120, criterion_properties},
        {7, "ambient Hilbert-Mumford cross-validation", 0, criterion_cross_validation},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (c.limit_seconds > 0 && secs > c.limit_seconds) {
            o.pass = false;
            o.detail += " (took longer than " + std::to_string(static_cast<int>(c.limit_seconds)) + " s)";
        }
        if (!o.pass) ++failed;
        std::printf("%s criterion %d: %s [%.2f s] %s\n", o.pass ? "PASS" : "FAIL", c.number, c.name.c_str(), secs,
                    o.detail.c_str());
    }
    return failed == 0 ? 0 : 1;
}
