// Command-line front end: problem files, reports and the built-in examples.
#pragma once

#include "tgit/action.hpp"
#include "tgit/toric.hpp"

#include <json.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tgit::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitInput = 2;

/// Malformed or invalid input; `line` is 1-based, 0 when unknown.
class InputError : public std::runtime_error {
public:
    InputError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line), detail_(what) {}
    std::size_t line() const { return line_; }
    /// The message without the line prefix.
    const std::string& detail() const { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

struct ProblemFile {
    Fan fan;
    SubtorusAction action = SubtorusAction::trivial(0);
    std::vector<std::pair<std::string, ToricDivisor>> divisors;
    std::vector<std::pair<std::string, IntVector>> shifts;
    std::vector<std::string> group;
    std::string digest;

    const ToricDivisor& divisor(const std::string& name) const;
    /// Shift of a named divisor, zero when absent.
    IntVector shift(const std::string& name) const;
    /// Resolves a --group value to divisor names.
    std::vector<std::string> group_members(const std::string& label) const;
};

ProblemFile parse_problem(const std::string& text);

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_digest(const std::string& bytes);

std::string version_string();

struct Report {
    Json body;
    int exit_code = kExitOk;
};

/// Text rendering of a report body.
std::string render_text(const Json& body);

/// Built-in data for the two worked examples.
struct PaperData {
    RawFan quadric_fan{3, {{1, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 0, 1}}, {{0, 1, 2, 3}}};
    IntMatrix quadric_phi{{2, 0}, {1, 2}, {1, 1}};
    IntVector quadric_divisor{-1, 0, 4, 7};
    RawFan plane_fan{2, {{1, 0}, {0, 1}}, {{0, 1}}};
    IntMatrix plane_phi{{1}, {-1}};
    IntVector plane_divisor{1, 0};
};

Report verify_paper(const PaperData& data = {});

/// Runs one command line (without the program name); writes the report to `out`
/// and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tgit::cli
