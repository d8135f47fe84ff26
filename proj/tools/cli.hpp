#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unifit::cli {

/// Exit codes: 0 = ran and accepted H0, 1 = ran and rejected H0, 2 = error.
/// simulate and calibrate return 0 on success.
inline constexpr int kExitAccept = 0;
inline constexpr int kExitReject = 1;
inline constexpr int kExitError = 2;

/// Environment variable naming the critical-value cache directory.
inline constexpr const char* kCacheDirEnv = "UNIFIT_CACHE_DIR";

/// Runs `unifit <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unifit::cli
