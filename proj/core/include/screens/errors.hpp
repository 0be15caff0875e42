#pragma once

#include <stdexcept>
#include <string>

namespace screens {

/// Invalid user-facing input: bad geometry, parameters outside a module's
/// preconditions, malformed config. CLI maps this to exit code 1.
class config_error : public std::invalid_argument {
public:
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A solve or quadrature failed to reach its requested tolerance.
/// CLI maps this to exit code 2.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// A physical invariant was violated (spectral radius > 1, non-positive
/// I - M in a log-determinant, ...). Always indicates an upstream bug,
/// never physics. CLI maps this to exit code 3.
class invariant_violation : public std::runtime_error {
public:
    explicit invariant_violation(const std::string& what) : std::runtime_error(what) {}
};

} // namespace screens
