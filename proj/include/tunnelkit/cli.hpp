#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tunnelkit::cli {

// Frozen exit-code contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitAcceptance = 4;
inline constexpr int kExitOracle = 5;

/// Runs `tunnelkit <command> [flags]`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tunnelkit::cli
