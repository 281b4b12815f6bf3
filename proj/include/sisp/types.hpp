#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sisp {

/// A point in an N-dimensional translational configuration space.
using Config = Eigen::VectorXd;

/// Violated precondition on a library call (dimension mismatch, bad parameter).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a principal axis cannot be defined (zero displacement, zero vector).
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ContractError(what);
}

[[nodiscard]] inline bool is_finite(const Config& q) noexcept { return q.allFinite(); }

}  // namespace sisp
