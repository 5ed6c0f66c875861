#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>

namespace tgit::cli {

namespace {

// Line of the first character of every value, keyed by JSON pointer.
// Runs on text nlohmann has already accepted.
class LineMap {
public:
    explicit LineMap(const std::string& text) : text_(text) {
        skip();
        value("");
    }

    std::size_t at(const std::string& pointer) const {
        auto it = lines_.find(pointer);
        return it == lines_.end() ? 0 : it->second;
    }

private:
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') ++line_;
            ++pos_;
        }
    }

    std::string string_token() {
        std::string out;
        ++pos_;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\') out += text_[pos_++];
            out += text_[pos_++];
        }
        ++pos_;
        return out;
    }

    static std::string escape(const std::string& key) {
        std::string out;
        for (char c : key) {
            if (c == '~') out += "~0";
            else if (c == '/') out += "~1";
            else out += c;
        }
        return out;
    }

    void value(const std::string& path) {
        lines_.emplace(path, line_);
        const char c = text_[pos_];
        if (c == '{') {
            ++pos_;
            skip();
            while (text_[pos_] != '}') {
                const std::string key = string_token();
                skip();
                ++pos_;  // ':'
                skip();
                value(path + "/" + escape(key));
                skip();
                if (text_[pos_] == ',') ++pos_, skip();
            }
            ++pos_;
        } else if (c == '[') {
            ++pos_;
            skip();
            for (std::size_t i = 0; text_[pos_] != ']'; ++i) {
                value(path + "/" + std::to_string(i));
                skip();
                if (text_[pos_] == ',') ++pos_, skip();
            }
            ++pos_;
        } else if (c == '"') {
            string_token();
        } else {
            while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
                   text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != '}')
                ++pos_;
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::map<std::string, std::size_t> lines_;
};

class Reader {
public:
    Reader(const Json& root, const LineMap& lines) : root_(root), lines_(lines) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& what) const {
        throw InputError(lines_.at(pointer), pointer.substr(1) + ": " + what);
    }

    const Json& at(const std::string& pointer) const { return root_.at(Json::json_pointer(pointer)); }

    Integer integer(const std::string& pointer) const {
        const Json& v = at(pointer);
        if (v.is_number_integer()) return v.is_number_unsigned() ? Integer(v.get<std::uint64_t>()) : Integer(v.get<std::int64_t>());
        fail(pointer, "expected an integer");
    }

    std::size_t index(const std::string& pointer) const {
        const Json& v = at(pointer);
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) fail(pointer, "expected a nonnegative integer");
        return v.get<std::size_t>();
    }

    IntVector vector(const std::string& pointer, std::optional<std::size_t> length = std::nullopt) const {
        const Json& v = at(pointer);
        if (!v.is_array()) fail(pointer, "expected a list of integers");
        if (length && v.size() != *length)
            fail(pointer, "expected " + std::to_string(*length) + " entries, found " + std::to_string(v.size()));
        IntVector out;
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(integer(pointer + "/" + std::to_string(i)));
        return out;
    }

    void require_array(const std::string& pointer) const {
        if (!at(pointer).is_array()) fail(pointer, "expected a list");
    }

    void require_object(const std::string& pointer) const {
        if (!at(pointer).is_object()) fail(pointer, "expected an object of named entries");
    }

private:
    const Json& root_;
    const LineMap& lines_;
};

const std::vector<std::string> kFields{"lattice_rank", "rays", "cones", "action", "divisors", "shifts", "group"};

std::string fan_field(FanErrorKind kind) {
    switch (kind) {
    case FanErrorKind::DimensionMismatch:
    case FanErrorKind::NonPrimitiveRay:
    case FanErrorKind::DuplicateRay:
        return "/rays";
    default:
        return "/cones";
    }
}

}  // namespace

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const ToricDivisor& ProblemFile::divisor(const std::string& name) const {
    for (const auto& [n, d] : divisors)
        if (n == name) return d;
    throw InputError(0, "unknown divisor '" + name + "'");
}

IntVector ProblemFile::shift(const std::string& name) const {
    divisor(name);
    for (const auto& [n, s] : shifts)
        if (n == name) return s;
    return zero_vector(action.dimension());
}

std::vector<std::string> ProblemFile::group_members(const std::string& label) const {
    if (label.empty() || label == "group") {
        if (group.empty()) throw InputError(0, "the file declares no group");
        return group;
    }
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = label.find(',', start);
        std::string name = label.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const bool known = std::any_of(divisors.begin(), divisors.end(), [&](const auto& d) { return d.first == name; });
        if (!known && name.size() > 1 && name[0] == 'Z') name = name.substr(1);
        divisor(name);
        out.push_back(name);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

ProblemFile parse_problem(const std::string& text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const Json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto ? upto - 1 : 0), '\n'));
        std::string what = e.what();
        if (const auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
        throw InputError(line, what);
    }
    const LineMap lines(text);
    const Reader r(root, lines);
    if (!root.is_object()) r.fail("", "expected an object at top level");
    for (const auto& [key, value] : root.items())
        if (std::find(kFields.begin(), kFields.end(), key) == kFields.end()) r.fail("/" + key, "unknown field");
    for (const char* required : {"lattice_rank", "rays", "cones"})
        if (!root.contains(required)) throw InputError(1, std::string("missing field '") + required + "'");

    ProblemFile out;
    out.digest = fnv1a_digest(text);
    RawFan raw;
    raw.lattice_rank = r.index("/lattice_rank");
    r.require_array("/rays");
    for (std::size_t i = 0; i < root["rays"].size(); ++i)
        raw.rays.push_back(r.vector("/rays/" + std::to_string(i), raw.lattice_rank));
    r.require_array("/cones");
    for (std::size_t i = 0; i < root["cones"].size(); ++i) {
        const std::string p = "/cones/" + std::to_string(i);
        r.require_array(p);
        FaceKey key;
        for (std::size_t j = 0; j < root["cones"][i].size(); ++j) key.push_back(r.index(p + "/" + std::to_string(j)));
        raw.cones.push_back(std::move(key));
    }
    try {
        out.fan = Fan::validate(raw);
    } catch (const FanError& e) {
        r.fail(fan_field(e.kind()), std::string(to_string(e.kind())) + ": " + e.what());
    }

    const std::size_t n = raw.lattice_rank;
    if (root.contains("action")) {
        r.require_array("/action");
        if (root["action"].size() != n)
            r.fail("/action", "expected " + std::to_string(n) + " rows (one per lattice coordinate), found " +
                                  std::to_string(root["action"].size()));
        std::vector<IntVector> rows;
        for (std::size_t i = 0; i < n; ++i)
            rows.push_back(r.vector("/action/" + std::to_string(i), i ? std::optional(rows[0].size()) : std::nullopt));
        const std::size_t d = rows.empty() ? 0 : rows[0].size();
        try {
            out.action = SubtorusAction(IntMatrix::from_rows(rows, d));
        } catch (const ActionError& e) {
            r.fail("/action", e.what());
        }
    } else {
        out.action = SubtorusAction::trivial(n);
    }

    if (root.contains("divisors")) {
        r.require_object("/divisors");
        for (const auto& [name, value] : root["divisors"].items()) {
            if (name.empty() || name.find_first_of("/~,") != std::string::npos)
                r.fail("/divisors", "divisor name '" + name + "' is empty or contains '/', '~' or ','");
            out.divisors.emplace_back(name, ToricDivisor{r.vector("/divisors/" + name, out.fan.ray_count())});
        }
    }
    if (root.contains("shifts")) {
        r.require_object("/shifts");
        for (const auto& [name, value] : root["shifts"].items()) {
            const std::string p = "/shifts/" + name;
            if (std::none_of(out.divisors.begin(), out.divisors.end(), [&](const auto& d) { return d.first == name; }))
                r.fail(p, "shift for unknown divisor '" + name + "'");
            out.shifts.emplace_back(name, r.vector(p, out.action.dimension()));
        }
    }
    if (root.contains("group")) {
        r.require_array("/group");
        for (std::size_t i = 0; i < root["group"].size(); ++i) {
            const std::string p = "/group/" + std::to_string(i);
            if (!root["group"][i].is_string()) r.fail(p, "expected a divisor name");
            const std::string name = root["group"][i].get<std::string>();
            if (std::none_of(out.divisors.begin(), out.divisors.end(), [&](const auto& d) { return d.first == name; }))
                r.fail(p, "unknown divisor '" + name + "'");
            out.group.push_back(name);
        }
        std::vector<ToricDivisor> basis;
        for (const auto& name : out.group) basis.push_back(out.divisor(name));
        try {
            DivisorGroup check(basis);
        } catch (const std::invalid_argument& e) {
            r.fail("/group", e.what());
        }
    }
    return out;
}

}  // namespace tgit::cli
