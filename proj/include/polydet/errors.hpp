#pragma once

#include <stdexcept>
#include <string>

namespace polydet {

// Bad input or violated precondition. The CLI maps this to exit code 2.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Quadrature, series or fit failed to reach its tolerance (exit code 3).
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace polydet
