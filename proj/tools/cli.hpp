#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bodyttc::cli {

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable consulted when --out is not given.
inline constexpr const char* kOutDirEnv = "BODYTTC_OUT_DIR";

/// Runs one command line (without the program name), e.g.
/// {"run-ttc", "--scenarios", "s/scenarios.json", "--out", "r"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bodyttc::cli
