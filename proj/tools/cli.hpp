#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pinvq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCertificate = 3;

/// Parses `args` (without the program name), runs one verb and writes the
/// report to `out` and diagnostics to `err`. Returns the process exit status:
/// 0 on success, 2 on an input error, 3 on a certificate or precondition
/// failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pinvq::cli
