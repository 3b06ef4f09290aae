#pragma once

#include <stdexcept>
#include <string>

namespace khoploc {

/// Invalid argument or precondition violation (bad dimensions, empty input, ...).
struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Not enough data points to perform a fit.
struct InsufficientDataError : std::runtime_error {
    explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

/// A fit converged to a shape that cannot be used (e.g. non-concave log density).
struct DegenerateFitError : std::runtime_error {
    explicit DegenerateFitError(const std::string& what) : std::runtime_error(what) {}
};

/// Anchor geometry does not determine a position (rank-deficient system).
struct DegenerateGeometryError : std::runtime_error {
    explicit DegenerateGeometryError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical routine failed to converge.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Config file / CLI parsing problem.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace khoploc
