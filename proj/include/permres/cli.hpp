#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace permres
{

/// Exit codes of the command-line tool.
enum ExitCode : int
{
    ExitPass = 0,
    ExitFail = 1,   // verify found a violated invariant
    ExitInvalidInput = 2,
    ExitCapExceeded = 3,
    ExitInternal = 4
};

/// Runs one CLI invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}   // namespace permres
