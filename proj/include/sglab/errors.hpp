#pragma once

#include <stdexcept>
#include <string>

namespace sglab {

// Invalid input: a spec, parameter, or file that violates a documented
// precondition.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numerical failure at runtime (non-convergence, overscaling, singular solve).
class NumericsError : public std::runtime_error {
public:
    explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

class QuadratureError : public NumericsError {
public:
    explicit QuadratureError(const std::string& msg) : NumericsError(msg) {}
};

// Inner 1-D maximization could not bracket its maximum.
class InnerMaxError : public NumericsError {
public:
    explicit InnerMaxError(const std::string& msg) : NumericsError(msg) {}
};

} // namespace sglab
