#pragma once

#include <stdexcept>
#include <string>

namespace thermocrack {

// Raised for configurations the decoupled solver cannot handle (d != 0).
struct UnsupportedCase : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a discrete solve misses its residual tolerance.
struct NonConvergence : std::runtime_error {
    double achieved;
    NonConvergence(const std::string& what, double achieved_residual)
        : std::runtime_error(what), achieved(achieved_residual) {}
};

}  // namespace thermocrack
