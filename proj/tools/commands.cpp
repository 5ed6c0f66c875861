#include "report_json.hpp"
#include "tgit/hm.hpp"
#include "tgit/oracle/oracle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace tgit::cli {

namespace {

struct Options {
    std::string file;
    bool json = false;
    bool check = false;
    bool serial = false;
    std::string divisor;
    std::string group;
    std::string character;
    std::string target;
    std::string lambda;
    std::string support;
    std::string face;
    std::string into;
    std::size_t hilbert_bound = 64;
    long long n_max = 4;
    long long box = 8;
    long long degree_box = 3;
};

IntVector parse_list(const std::string& text, const std::string& what) {
    IntVector out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.emplace_back(item);
        } catch (const std::exception&) {
            throw InputError(0, what + ": '" + item + "' is not an integer");
        }
    }
    return out;
}

std::vector<std::size_t> parse_indices(const std::string& text, const std::string& what) {
    std::vector<std::size_t> out;
    for (const auto& x : parse_list(text, what)) {
        if (x < 0) throw InputError(0, what + ": negative index");
        out.push_back(x.convert_to<std::size_t>());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Faces separated by ';', each a comma list, optionally bracketed: "[];[0];[2]".
SubfanLocus parse_faces(const std::string& text, const Fan& fan) {
    SubfanLocus out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](char c) { return c == '[' || c == ']' || c == ' '; }),
                   item.end());
        const FaceKey key = parse_indices(item, "--target");
        if (!fan.has_face(key)) throw InputError(0, "--target: " + to_string(key) + " is not a face of the fan");
        out.insert_with_faces(fan, key);
    }
    return out;
}

ProblemFile load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(0, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

Execution execution(const Options& o) { return o.serial ? Execution::serial : Execution::parallel; }

struct Problem {
    std::vector<ToricDivisor> basis;
    Linearization lin;
    bool group = false;
};

Problem select(const ProblemFile& pf, const Options& o) {
    if (o.divisor.empty() == o.group.empty() && !(o.divisor.empty() && !pf.group.empty()))
        throw InputError(0, "give exactly one of --divisor and --group");
    Problem p;
    if (!o.divisor.empty()) {
        p.basis = {pf.divisor(o.divisor)};
        p.lin.shifts = {pf.shift(o.divisor)};
        return p;
    }
    p.group = true;
    for (const auto& name : pf.group_members(o.group)) {
        p.basis.push_back(pf.divisor(name));
        p.lin.shifts.push_back(pf.shift(name));
    }
    return p;
}

SemistableLocus semistable(const ProblemFile& pf, const Problem& p, Execution ex) {
    if (p.group) return semistable_group(DivisorGroup(p.basis), p.lin, pf.action, pf.fan, ex);
    return semistable_divisor(p.basis.front(), p.lin, pf.action, pf.fan, ex);
}

void attach_check(Json& result, Report& report, const SemistableLocus& ss, const std::vector<ToricDivisor>& basis,
                  const Linearization& lin, const ProblemFile& pf) {
    const auto r = check_locus(ss, basis, lin, pf.action, pf.fan);
    result["check"] = check_json(r);
    if (!r.ok()) report.exit_code = kExitVerdict;
}

IntVector character_of(const ProblemFile& pf, const Options& o) {
    IntVector chi = parse_list(o.character, "--character");
    if (chi.empty()) chi = zero_vector(pf.action.dimension());
    if (chi.size() != pf.action.dimension())
        throw InputError(0, "--character has " + std::to_string(chi.size()) + " entries, the action has dimension " +
                                std::to_string(pf.action.dimension()));
    return chi;
}

Report cmd_cartier(const ProblemFile& pf, const Options& o, bool ample) {
    const Problem p = select(pf, o);
    const DivisorGroup group(p.basis);
    const SubfanLocus locus = ample ? ample_locus(group, pf.fan) : cartier_locus(group, pf.fan);
    Json result;
    result["locus"] = locus_json(locus);
    Json data = Json::array();
    for (const auto& key : locus.maximal_elements(pf.fan)) {
        Json m = Json::array();
        for (const auto& d : p.basis) m.push_back(to_json(*is_cartier_on(d, pf.fan, key)));
        data.push_back({{"cone", face_json(key)}, {"cartier_data", m}});
    }
    result["cartier_data"] = data;
    return {result, locus.empty() ? kExitVerdict : kExitOk};
}

Report cmd_semistable(const ProblemFile& pf, const Options& o) {
    const Problem p = select(pf, o);
    const auto ss = semistable(pf, p, execution(o));
    Report report;
    Json result = semistable_json(ss);
    const auto affine = is_affine(ss.locus, pf.fan);
    result["affine"] = affine.has_value();
    if (o.check) attach_check(result, report, ss, p.basis, p.lin, pf);
    if (ss.locus.empty()) report.exit_code = kExitVerdict;
    report.body = std::move(result);
    return report;
}

Report cmd_trivial(const ProblemFile& pf, const Options& o) {
    const IntVector chi = character_of(pf, o);
    const auto ss = mumford_trivial_semistable(chi, pf.action, pf.fan, execution(o));
    Report report;
    Json result;
    result["character"] = to_json(chi);
    result.update(semistable_json(ss));
    if (o.check)
        attach_check(result, report, ss, {ToricDivisor{zero_vector(pf.fan.ray_count())}}, Linearization{{negate(chi)}}, pf);
    if (ss.locus.empty()) report.exit_code = kExitVerdict;
    report.body = std::move(result);
    return report;
}

Report cmd_chambers(const ProblemFile& pf, const Options& o) {
    const auto chambers = git_chambers(pf.action, pf.fan, execution(o));
    Report report;
    Json list = Json::array();
    for (const auto& c : chambers) {
        Json entry;
        entry["cone"] = cone_json(c.cone);
        entry["sample"] = to_json(c.sample);
        entry.update(semistable_json(c.locus));
        if (o.check)
            attach_check(entry, report, c.locus, {ToricDivisor{zero_vector(pf.fan.ray_count())}},
                         Linearization{{negate(c.sample)}}, pf);
        list.push_back(std::move(entry));
    }
    report.body = {{"chambers", list}};
    return report;
}

Report cmd_quotient(const ProblemFile& pf, const Options& o) {
    Report report;
    Json result;
    SemistableLocus ss;
    if (!o.character.empty()) {
        const IntVector chi = character_of(pf, o);
        ss = mumford_trivial_semistable(chi, pf.action, pf.fan, execution(o));
        result["semistable"] = semistable_json(ss);
        if (o.check)
            attach_check(result, report, ss, {ToricDivisor{zero_vector(pf.fan.ray_count())}}, Linearization{{negate(chi)}},
                         pf);
    } else {
        const Problem p = select(pf, o);
        ss = semistable(pf, p, execution(o));
        result["semistable"] = semistable_json(ss);
        if (o.check) attach_check(result, report, ss, p.basis, p.lin, pf);
    }
    if (ss.locus.empty()) {
        result["quotient"] = Json();
        report.exit_code = kExitVerdict;
    } else {
        result["quotient"] = quotient_json(build_quotient(ss, pf.action, pf.fan, execution(o)));
    }
    report.body = std::move(result);
    return report;
}

Report cmd_obstruction(const ProblemFile& pf, const Options& o) {
    SubfanLocus target;
    if (!o.target.empty()) target = parse_faces(o.target, pf.fan);
    else target = semistable(pf, select(pf, o), execution(o)).locus;
    const auto r = obstruction_report(target, pf.action, pf.fan);
    Json result;
    result["required"] = locus_json(r.required);
    Json ach = Json::array();
    for (const auto& [key, cone] : r.achievable) ach.push_back({{"face", face_json(key)}, {"weights", cone_json(cone)}});
    result["achievable"] = ach;
    Json pw = Json::array();
    for (const auto& [keys, cone] : r.pairwise)
        pw.push_back({{"faces", {face_json(keys.first), face_json(keys.second)}}, {"meet", cone_json(cone)}});
    result["pairwise"] = pw;
    result["common"] = cone_json(r.common);
    result["at_zero"] = locus_json(r.at_zero.locus);
    result["obstructed"] = r.obstructed;
    result["realizing_character"] = r.realizing_character ? to_json(*r.realizing_character) : Json();
    result["verdict"] = r.realizing_character ? "realized by a trivial-bundle character"
                                              : "no trivial-bundle character yields the required locus";
    return {result, r.realizing_character ? kExitOk : kExitVerdict};
}

Report cmd_class_group(const ProblemFile& pf) { return {class_group_json(class_group(pf.fan)), kExitOk}; }

const ToricDivisor& hm_divisor(const ProblemFile& pf, const Options& o, Linearization& lin) {
    if (o.divisor.empty()) throw InputError(0, "hm needs --divisor");
    lin.shifts = {pf.shift(o.divisor)};
    return pf.divisor(o.divisor);
}

PointPattern hm_point(const CrossValidation& cv, const Options& o) {
    if (!o.face.empty()) {
        const FaceKey key = parse_indices(o.face, "--face");
        for (const auto& f : cv.faces)
            if (f.face == key) return f.pattern;
        throw InputError(0, "--face: " + to_string(key) + " is not a face of the fan");
    }
    PointPattern p{parse_indices(o.support, "--support")};
    for (std::size_t i : p.support)
        if (i >= cv.ambient.coordinate_count())
            throw InputError(0, "--support: coordinate " + std::to_string(i) + " out of range");
    return p;
}

Json ambient_json(const CrossValidation& cv) {
    Json coords = Json::array();
    for (std::size_t j = 0; j < cv.ambient.coordinate_count(); ++j)
        coords.push_back({{"section", j < cv.coordinates.size() ? to_json(cv.coordinates[j]) : Json("fiber")},
                          {"weight", to_json(cv.ambient.weights()[j])}});
    return coords;
}

std::vector<std::size_t> degree_zero(const CrossValidation& cv) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < cv.coordinates.size(); ++j)
        if (cv.coordinates[j].back() == 0) out.push_back(j);
    return out;
}

Report cmd_hm(const ProblemFile& pf, const Options& o, const std::string& mode) {
    Linearization lin;
    const ToricDivisor& d = hm_divisor(pf, o, lin);
    const auto cv = cross_validate(pf.fan, pf.action, d, lin, o.hilbert_bound);
    Json result;
    result["coordinates"] = ambient_json(cv);
    if (mode == "cross-validate") {
        Json faces = Json::array();
        for (const auto& f : cv.faces)
            faces.push_back({{"face", face_json(f.face)},
                             {"pattern", f.pattern.support},
                             {"toric", f.toric},
                             {"ambient", f.ambient},
                             {"destabilizer", f.destabilizer ? to_json(*f.destabilizer) : Json()}});
        result["faces"] = faces;
        result["sound"] = cv.sound;
        result["agree"] = cv.agree;
        return {result, cv.agree ? kExitOk : kExitVerdict};
    }
    const PointPattern p = hm_point(cv, o);
    result["point"] = p.support;
    if (mode == "limit") {
        const IntVector lambda = parse_list(o.lambda, "--lambda");
        if (lambda.size() != cv.ambient.dimension())
            throw InputError(0, "--lambda needs " + std::to_string(cv.ambient.dimension()) + " entries");
        const auto l = limit(lambda, p, cv.ambient);
        result["lambda"] = to_json(lambda);
        result["limit"] = l ? Json(l->support) : Json();
        return {result, l ? kExitOk : kExitVerdict};
    }
    const std::vector<std::size_t> into = o.into.empty() ? degree_zero(cv) : parse_indices(o.into, "--into");
    const auto lambda = destabilize_into(p, into, cv.ambient);
    result["into"] = into;
    result["destabilizer"] = lambda ? to_json(*lambda) : Json();
    if (lambda) result["limit"] = limit(*lambda, p, cv.ambient)->support;
    return {result, lambda ? kExitOk : kExitVerdict};
}

oracle::Instance oracle_instance(const ProblemFile& pf, const Problem& p) {
    oracle::Instance in;
    in.lattice_rank = pf.fan.lattice_rank();
    in.rays = pf.fan.rays();
    for (const auto& f : pf.fan.faces()) in.faces.push_back(f.key);
    in.weight_rows = pf.action.phi_star().row_vectors();
    for (const auto& d : p.basis) in.divisors.push_back(d.coefficients);
    in.shifts = p.lin.shifts;
    in.group = p.group;
    return in;
}

Report cmd_oracle(const ProblemFile& pf, const Options& o) {
    const Problem p = select(pf, o);
    const auto found = oracle::enumerate_witnesses(oracle_instance(pf, p), {o.n_max, o.box, o.degree_box});
    const auto engine = semistable(pf, p, execution(o));
    const SubfanLocus locus(found.faces);
    Json result;
    result["bounds"] = {{"n_max", o.n_max}, {"box", o.box}, {"degree_box", o.degree_box}};
    result["oracle"] = locus_json(locus);
    result["engine"] = locus_json(engine.locus);
    result["inside_engine"] = locus.is_subset_of(engine.locus);
    result["equal"] = locus == engine.locus;
    return {result, locus.is_subset_of(engine.locus) ? kExitOk : kExitVerdict};
}

std::string echo(const std::vector<std::string>& args, const std::string& file) {
    std::string out;
    for (const auto& a : args) {
        if (a == file && !file.empty()) continue;
        out += (out.empty() ? "" : " ") + a;
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Toric GIT: semistable loci, certificates and quotients", "tgit"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "Machine-readable output");
    app.add_flag("--check", o.check, "Replay certificates through the independent checker");
    app.add_flag("--serial", o.serial, "Run the serial reference kernels");

    auto file_command = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("file", o.file, "Problem file")->required();
        return sub;
    };
    auto* cartier = file_command("cartier-locus", "Faces where every basis divisor is Cartier");
    auto* ample = file_command("ample-locus", "Faces cut out by a nonvanishing homogeneous section");
    auto* semi = file_command("semistable", "Semistable locus with certificates");
    auto* trivial = file_command("trivial-bundle", "Semistable locus of the trivial bundle twisted by a character");
    auto* chambers = file_command("chambers", "Variation of GIT chambers of the trivial bundle");
    auto* quotient = file_command("quotient", "Glued good quotient of a semistable locus");
    auto* obstruction = file_command("obstruction", "Can a trivial-bundle character produce a given locus?");
    auto* classes = file_command("class-group", "Divisor class group and Picard group");
    auto* hm = app.add_subcommand("hm", "Hilbert-Mumford limits in the ambient linear model");
    hm->require_subcommand(1);
    auto* hm_limit = hm->add_subcommand("limit", "Limit of a point along a one-parameter subgroup");
    auto* hm_destab = hm->add_subcommand("destabilize", "Find a one-parameter subgroup driving a point into a target");
    auto* hm_cross = hm->add_subcommand("cross-validate", "Compare toric and ambient semistability face by face");
    auto* verify = app.add_subcommand("verify-paper", "Run the built-in worked examples end to end");
    auto* orc = file_command("oracle", "Brute-force witness enumeration");
    orc->group("");

    for (auto* sub : {cartier, ample, semi, quotient, obstruction, orc}) {
        sub->add_option("--divisor", o.divisor, "Divisor name");
        sub->add_option("--group", o.group, "Group: divisor names, comma separated, optionally Z-prefixed");
    }
    for (auto* sub : {trivial, quotient}) sub->add_option("--character", o.character, "Character, comma separated");
    obstruction->add_option("--target", o.target, "Required locus as faces, e.g. \"[];[0];[2]\"");
    for (auto* sub : {hm_limit, hm_destab, hm_cross}) {
        sub->add_option("file", o.file, "Problem file")->required();
        sub->add_option("--divisor", o.divisor, "Divisor whose section ring gives the ambient model")->required();
        sub->add_option("--hilbert-bound", o.hilbert_bound, "Maximal number of ambient coordinates");
    }
    for (auto* sub : {hm_limit, hm_destab}) {
        sub->add_option("--support", o.support, "Nonzero ambient coordinates, comma separated");
        sub->add_option("--face", o.face, "Use the point pattern of this fan face");
    }
    hm_limit->add_option("--lambda", o.lambda, "One-parameter subgroup, comma separated")->required();
    hm_destab->add_option("--into", o.into, "Allowed coordinates of the limit (default: degree zero sections)");
    orc->add_option("--n-max", o.n_max, "Largest degree");
    orc->add_option("--box", o.box, "Largest exponent entry");
    orc->add_option("--degree-box", o.degree_box, "Largest group degree entry");
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->add_flag("--json", o.json, "Machine-readable output");
        sub->add_flag("--check", o.check, "Replay certificates through the independent checker");
        sub->add_flag("--serial", o.serial, "Run the serial reference kernels");
    }
    for (auto* sub : {hm_limit, hm_destab, hm_cross}) sub->add_flag("--json", o.json, "Machine-readable output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << version_string() << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    Report report;
    std::string digest;
    try {
        if (verify->parsed()) {
            report = verify_paper();
        } else {
            const ProblemFile pf = load(o.file);
            digest = pf.digest;
            if (cartier->parsed()) report = cmd_cartier(pf, o, false);
            else if (ample->parsed()) report = cmd_cartier(pf, o, true);
            else if (semi->parsed()) report = cmd_semistable(pf, o);
            else if (trivial->parsed()) report = cmd_trivial(pf, o);
            else if (chambers->parsed()) report = cmd_chambers(pf, o);
            else if (quotient->parsed()) report = cmd_quotient(pf, o);
            else if (obstruction->parsed()) report = cmd_obstruction(pf, o);
            else if (classes->parsed()) report = cmd_class_group(pf);
            else if (hm_limit->parsed()) report = cmd_hm(pf, o, "limit");
            else if (hm_destab->parsed()) report = cmd_hm(pf, o, "destabilize");
            else if (hm_cross->parsed()) report = cmd_hm(pf, o, "cross-validate");
            else if (orc->parsed()) report = cmd_oracle(pf, o);
        }
    } catch (const InputError& e) {
        if (o.file.empty()) err << "error: " << e.what() << "\n";
        else if (e.line()) err << o.file << ":" << e.line() << ": " << e.detail() << "\n";
        else err << o.file << ": " << e.detail() << "\n";
        return kExitInput;
    } catch (const NotAffine& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const HilbertBasisTooLarge& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    const Json body = envelope(echo(args, o.file), digest, std::move(report.body));
    if (o.json) out << body.dump(2) << "\n";
    else out << render_text(body);
    return report.exit_code;
}

}  // namespace tgit::cli
