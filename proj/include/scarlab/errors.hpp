#pragma once

#include <stdexcept>
#include <string>

namespace scarlab {

// Error categories map onto process exit codes in the CLI:
// validation 2, resource caps 3, numerical failures 4.

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CapExceededError : std::runtime_error {
    explicit CapExceededError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace scarlab
