#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tripoly::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240101;

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kAccuracy = 3, kEmptySample = 4 };

/// Runs one command line (argv[0] is the program name). Output goes to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tripoly::cli
