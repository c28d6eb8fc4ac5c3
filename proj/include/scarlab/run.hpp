#pragma once

#include <string>
#include <vector>

#include "scarlab/config.hpp"

namespace scarlab {

struct RunOutput {
    std::vector<std::string> artifacts;  // files written, in emission order
};

// Executes the configured experiment and writes CSV/JSON artifacts into the
// output directory. Re-running the same config rewrites the same files with
// byte-identical bodies; only the timestamp comment line differs.
RunOutput run(const RunConfig& config);

// Exit code convention: 0 success, 2 validation, 3 cap exceeded,
// 4 numerical failure.
int exit_code_for(const std::exception& e);

}  // namespace scarlab
