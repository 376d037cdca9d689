#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chshlab::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kBoundViolation = 3,
    kIo = 4,
};

inline constexpr const char* kFormatEnvVar = "CHSH_LAB_FORMAT";

/// Runs one CLI invocation. `args` excludes the program name. `env_format` is the
/// value of CHSH_LAB_FORMAT (nullptr when unset); an explicit --format always wins.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const char* env_format = nullptr);

}  // namespace chshlab::cli
