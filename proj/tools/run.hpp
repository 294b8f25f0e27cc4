#pragma once

#include <string>

#include "polydet/config.hpp"

namespace polydet::cli {

enum Exit { kOk = 0, kInputError = 2, kConvergenceError = 3, kVerificationFailed = 4 };

struct RunResult {
    int exit_code = kOk;
    std::string document;  // in the requested format
};

// Runs one job. Relative pack paths are resolved against `base_dir`.
// Input and convergence errors propagate as exceptions.
RunResult run(const JobConfig& cfg, const std::string& base_dir = ".");

} // namespace polydet::cli
