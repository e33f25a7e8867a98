// errors.hpp
// Exception types for solver and validation failures.
#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace gravsurf {

struct CurveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConvergence : std::runtime_error {
    double last_residual;
    NonConvergence(const std::string& what, double residual)
        : std::runtime_error(what + " (last residual " + format_residual(residual) + ")"),
          last_residual(residual) {}

private:
    static std::string format_residual(double r) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3e", r);
        return buf;
    }
};

struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateParametrization : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TaylorSignViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PointOnBoundary : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gravsurf
