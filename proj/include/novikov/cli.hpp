#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace novikov::cli
{

inline constexpr const char *tool_version = "1.0.0";

/// Exit codes of the command-line tool.
enum ExitCode : int
{
    ok = 0,
    check_failed = 1,
    usage_error = 2,
};

/// Runs `novikov <subcommand> [flags]`.  The JSON report goes to `out`
/// (or to --output), diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace novikov::cli
