#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dhzero::cli {

inline constexpr std::string_view kToolName = "dhzero";
inline constexpr std::string_view kVersion = "1.0.0";

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kSelftestFailed = 2;

/// Runs one command line (program name excluded). Results go to `out` or the
/// --out file, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dhzero::cli
