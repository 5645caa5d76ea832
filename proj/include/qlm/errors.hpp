#pragma once

#include <stdexcept>
#include <string>

namespace qlm {

/// Metric or operation queried outside its valid coordinate range.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Matrix inversion hit a (numerically) singular matrix.
struct SingularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Metric signature is not (-,+,+,+) where one was required.
struct SignatureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mean curvature vector failed the spacelike requirement.
struct NotSpacelikeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Isometric embedding does not exist (radicand of the profile ODE went
/// non-positive). Carries the first offending colatitude.
struct EmbeddingError : std::runtime_error {
    double theta;
    EmbeddingError(const std::string& msg, double theta_) : std::runtime_error(msg), theta(theta_) {}
};

/// A radius ladder failed to extrapolate within tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Expression / config text could not be parsed. Positions are 1-based.
struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int column_)
        : std::runtime_error(msg), line(line_), column(column_) {}
};

/// Invalid run configuration; message names the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qlm
