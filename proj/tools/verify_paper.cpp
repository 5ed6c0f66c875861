#include "report_json.hpp"

#include <functional>

namespace tgit::cli {

namespace {

class Clauses {
public:
    void check(const std::string& name, bool ok, const std::string& expected, const std::string& actual) {
        list_.push_back({{"clause", name}, {"ok", ok}, {"expected", expected}, {"actual", actual}});
        if (!ok) failed_ = true;
    }

    // Runs `body`; an exception fails the clause instead of aborting the run.
    void guard(const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            check(name, false, "no error", e.what());
        }
    }

    Json take() { return std::move(list_); }
    bool failed() const { return failed_; }

private:
    Json list_ = Json::array();
    bool failed_ = false;
};

std::string show(const SubfanLocus& l) { return to_string(l); }
std::string flag(bool b) { return b ? "true" : "false"; }

std::string flags(const GluedQuotient& q) {
    return "good=" + flag(q.good) + " geometric=" + flag(q.geometric) + " separated=" + flag(q.separated);
}

// Quotient fan is A^1: one ray, not complete.
bool is_affine_line(const GluedQuotient& q) {
    return q.quotient_fan && q.quotient_fan->lattice_rank() == 1 && q.quotient_fan->maximal_cones().size() == 1 &&
           q.quotient_fan->ray_count() == 1;
}

bool is_projective_line(const GluedQuotient& q) {
    return q.quotient_fan && q.quotient_fan->lattice_rank() == 1 && q.quotient_fan->is_complete();
}

bool row_equivalent_to(const LatticeMap& p, const IntVector& row) {
    if (p.matrix.rows() != 1) return false;
    const IntVector r = p.matrix.row_vectors().front();
    return r == row || r == negate(row);
}

std::string describe_fan(const std::optional<Fan>& f) {
    if (!f) return "no quotient fan";
    return "rank " + std::to_string(f->lattice_rank()) + ", " + std::to_string(f->ray_count()) + " rays, " +
           std::to_string(f->maximal_cones().size()) + " maximal cones" + (f->is_complete() ? ", complete" : "");
}

void intro(const PaperData& data, Clauses& c, Json& summary) {
    const Fan fan = Fan::validate(data.plane_fan);
    const SubtorusAction action(data.plane_phi);
    const ToricDivisor d{data.plane_divisor};
    const SubfanLocus single_target(std::set<FaceKey>{{}, {1}});
    const SubfanLocus group_target(std::set<FaceKey>{{}, {0}, {1}});

    const auto single = semistable_divisor(d, {}, action, fan);
    c.check("intro: X^ss(D)", single.locus == single_target, show(single_target), show(single.locus));
    const auto qs = build_quotient(single, action, fan);
    c.check("intro: X^ss(D) quotient is the affine line", is_affine_line(qs), "rank 1, 1 rays, 1 maximal cones",
            describe_fan(qs.quotient_fan));
    c.check("intro: X^ss(D) quotient flags", qs.good && qs.geometric && qs.separated,
            "good=true geometric=true separated=true", flags(qs));

    const auto group = semistable_group(DivisorGroup({d}), {}, action, fan);
    c.check("intro: X^ss(ZD)", group.locus == group_target, show(group_target), show(group.locus));
    c.check("intro: X^ss(ZD) is not affine", !is_affine(group.locus, fan).has_value(), "not affine",
            is_affine(group.locus, fan) ? "affine" : "not affine");
    const auto qg = build_quotient(group, action, fan);
    const bool same_ray = qg.charts.size() == 2 && qg.charts[0].image == qg.charts[1].image;
    c.check("intro: X^ss(ZD) quotient is a doubled line", same_ray && qg.good && !qg.separated,
            "two charts onto the same ray, good=true separated=false",
            std::to_string(qg.charts.size()) + " charts" + (same_ray ? " onto the same ray, " : ", ") + flags(qg));
    c.check("intro: X^ss(D) strictly inside X^ss(ZD)",
            single.locus.is_subset_of(group.locus) && single.locus != group.locus, "strict inclusion",
            show(single.locus) + " vs " + show(group.locus));

    summary["intro"] = {{"single", semistable_json(single)}, {"group", semistable_json(group)}};
}

void quadric(const PaperData& data, Clauses& c, Json& summary) {
    const Fan fan = Fan::validate(data.quadric_fan);
    const SubtorusAction action(data.quadric_phi);
    const ToricDivisor d{data.quadric_divisor};
    const SubfanLocus target(std::set<FaceKey>{{}, {0}, {2}});

    const auto ss = semistable_divisor(d, {}, action, fan);
    c.check("quadric: X^ss(D) = U", ss.locus == target, show(target), show(ss.locus));
    const auto q = build_quotient(ss, action, fan);
    c.check("quadric: quotient of U is the projective line", is_projective_line(q), "rank 1, complete",
            describe_fan(q.quotient_fan));
    c.check("quadric: quotient flags", q.good && q.geometric && q.separated, "good=true geometric=true separated=true",
            flags(q));
    const IntVector expected_row{1, 2, -4};
    c.check("quadric: projection", row_equivalent_to(q.projection, expected_row) && (q.projection.matrix * action.phi()).is_zero(),
            "+-(1,2,-4) with P phi = 0",
            q.projection.matrix.rows() ? to_string(q.projection.matrix.row_vectors().front()) : "[]");

    const Cone k0 = Cone::from_generators(2, {{1, 1}, {1, 2}});
    const Cone k2 = Cone::from_generators(2, {{2, 0}, {2, 1}});
    c.guard("quadric: obstruction", [&] {
        const auto r = obstruction_report(target, action, fan);
        const Cone a0 = achievable_weights({0}, action, fan);
        const Cone a2 = achievable_weights({2}, action, fan);
        c.check("quadric: achievable weights at ray 0", a0 == k0, k0.to_string(), a0.to_string());
        c.check("quadric: achievable weights at ray 2", a2 == k2, k2.to_string(), a2.to_string());
        c.check("quadric: achievable weights meet in zero", r.common.is_zero(), "{0}", r.common.to_string());
        c.check("quadric: no trivial-bundle character yields U", !r.realizing_character.has_value(),
                "no realizing character", r.realizing_character ? to_string(*r.realizing_character) : "none");
        const auto chambers = git_chambers(action, fan);
        std::size_t hits = 0;
        for (const auto& ch : chambers)
            if (ch.locus.locus == target) ++hits;
        c.check("quadric: no chamber locus equals U", hits == 0, "0 chambers",
                std::to_string(hits) + " of " + std::to_string(chambers.size()) + " chambers");
    });
    const auto cg = class_group(fan);
    c.check("quadric: Pic = 0", cg.picard_rank == 0 && cg.picard_torsion.empty(), "rank 0, no torsion",
            "rank " + std::to_string(cg.picard_rank) + ", torsion " + to_string(cg.picard_torsion));
    c.check("quadric: Cl = Z", cg.rank == 1 && cg.torsion.empty(), "rank 1, no torsion",
            "rank " + std::to_string(cg.rank) + ", torsion " + to_string(cg.torsion));

    summary["quadric"] = {{"semistable", semistable_json(ss)}, {"quotient", quotient_json(q)}};
}

}  // namespace

Report verify_paper(const PaperData& data) {
    Clauses c;
    Json summary;
    c.guard("intro", [&] { intro(data, c, summary); });
    c.guard("quadric", [&] { quadric(data, c, summary); });
    Report r;
    r.exit_code = c.failed() ? kExitVerdict : kExitOk;
    r.body["passed"] = !c.failed();
    r.body["clauses"] = c.take();
    r.body["examples"] = std::move(summary);
    return r;
}

}  // namespace tgit::cli
