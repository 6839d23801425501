// errors.hpp: exception types shared by the library and the CLI

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace tmsf {

// Bad user-supplied parameters or a precondition violation. The CLI maps it to exit code 2.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed (non-physical intermediate, quadrature budget
// exhausted, ...). The CLI maps it to exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, double achieved_error = 0.0)
        : std::runtime_error(what), achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) throw InvalidArgument(message);
}

inline void require_finite(double x, const char* name) {
    if (!std::isfinite(x))
        throw InvalidArgument(std::string(name) + " must be finite");
}

} // namespace detail
} // namespace tmsf
