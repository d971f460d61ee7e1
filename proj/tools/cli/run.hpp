#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace kpp::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitInvalidParameters = 2,
    kExitNotConverged = 3,
};

struct RunResult {
    int exit_code = kExitOk;
    std::string summary;
    std::vector<std::filesystem::path> files;
};

/// Validates, dispatches on cfg.command and writes artifacts into
/// cfg.output_dir. Errors are mapped to exit codes, never thrown.
RunResult run(const RunConfig& cfg);

}  // namespace kpp::cli
