#pragma once

#include <iosfwd>

namespace htec::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kNotConnected = 3,
    kNoConvergence = 4,
};

/// Entry point of the `htec` tool. Subcommands: compute, baseline, compare,
/// sunflower, stats, check, capacity. Results go to --output or `out`;
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace htec::cli
