#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ostrowski::cli {

/// Exit codes: 0 pass, 1 a checked bound failed, 2 usage or numerical error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitError = 2;

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ostrowski::cli
