// errors.hpp: exception types shared by the library and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace dephaser {

// Bad parameters or an unsupported combination of options.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Quadrature or root finding failed to reach the requested accuracy.
struct NumericalError : std::runtime_error {
    NumericalError(const std::string& what, double error_estimate = 0.0)
        : std::runtime_error(what), error_estimate(error_estimate) {}
    double error_estimate;
};

// Work budget (panel count, probe count, grid size) exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dephaser
