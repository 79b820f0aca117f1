#pragma once

#include <stdexcept>
#include <string>

namespace ucfem {

/// Bad input to a public operation (mesh size, coefficients, region geometry).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A region selects no element of the mesh.
class EmptyRegionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Nodal data does not cover every node of the data region.
class InvalidDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Extreme singular value iteration did not settle; carries the last estimate.
class EstimationFailure : public std::runtime_error {
public:
    EstimationFailure(const std::string& what, double last_estimate)
        : std::runtime_error(what), last_estimate_(last_estimate) {}
    double last_estimate() const noexcept { return last_estimate_; }

private:
    double last_estimate_;
};

/// The crosswind margin does not fit inside the characteristic strip.
class WeightConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A stabilizer quadratic form came out negative: the assembled matrix is wrong.
class AssemblyDefectError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ucfem
