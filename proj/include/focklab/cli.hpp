#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace focklab::cli {

inline constexpr const char* kVersion = "0.1.0";

// One tool invocation (args without the program name). Table and report data
// go to --out when given, otherwise to `out`; diagnostics go to `err`.
// Exit codes: 0 success, 2 config error, 3 truncation error,
// 4 non-convergence.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace focklab::cli
