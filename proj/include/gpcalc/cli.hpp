#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gpcalc::cli {

inline constexpr int report_version = 1;

// Process exit codes.
inline constexpr int exit_yes = 0;
inline constexpr int exit_no = 1;
inline constexpr int exit_unknown = 2;
inline constexpr int exit_usage = 64;
inline constexpr int exit_parse = 65;
inline constexpr int exit_no_input = 66;
inline constexpr int exit_hypothesis = 67;
inline constexpr int exit_invalid = 68;
inline constexpr int exit_internal = 70;

// args excludes the program name: {command, problem-file, flags...}.
// The report goes to `out`; diagnostics for humans go to `err`.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gpcalc::cli
