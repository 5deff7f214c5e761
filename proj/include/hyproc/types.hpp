#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace hyproc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Bad input from the caller: dimension mismatches, malformed files,
/// invariant violations in constructor arguments. CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical breakdown at runtime: accumulated drift past tolerance,
/// divergence of an iteration, singular configurations. CLI exit code 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hyproc
