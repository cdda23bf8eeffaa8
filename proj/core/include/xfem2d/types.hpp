#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace xfem2d {

using Index = std::int32_t;
inline constexpr Index kInvalidIndex = -1;

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid geometry: non-divisible spacing, corner off a node, point inside a solid wedge, ...
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Invalid domain or reference-coordinate input.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Bad user-facing configuration (CLI / case files).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Mesh-file syntax or validation problem; carries a 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line = 0)
        : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg), line_(line) {}
    long line() const { return line_; }

private:
    long line_ = 0;
};

/// Isoparametric map is singular or inverted.
class MappingError : public Error {
public:
    using Error::Error;
};

/// Evaluation requested exactly at a singular point.
class SingularEvalError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature failed to meet its tolerance; carries the best estimate.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& msg, double best, double bound)
        : Error(msg), best_estimate_(best), error_bound_(bound) {}
    double best_estimate() const { return best_estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

/// Linear system is singular (e.g. pure-Neumann Laplacian with no anchor).
class RankError : public Error {
public:
    using Error::Error;
};

class AssemblyError : public Error {
public:
    using Error::Error;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

}  // namespace xfem2d
