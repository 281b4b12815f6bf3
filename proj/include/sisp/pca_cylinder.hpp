#pragma once

#include <span>

#include "sisp/rng.hpp"
#include "sisp/types.hpp"

namespace sisp {

enum class AxisCentering {
    Origin,  ///< second moments of displacements from the origin (escape direction)
    Mean,    ///< covariance about the sample mean
};

/// Unit escape direction plus the running moments needed to re-extract it
/// after each new sample.
struct PrincipalAxis {
    Config axis;
    Config origin;
    long count = 0;
    Config sum;               // sum of displacements
    Eigen::MatrixXd outer_sum;  // sum of displacement outer products
    double eigenvalue = 0.0;
    AxisCentering centering = AxisCentering::Origin;

    /// Moment matrix whose leading eigenvector is the axis.
    [[nodiscard]] Eigen::MatrixXd moment_matrix() const;
};

/// Leading eigenvector of the displacement moments of `samples` about `origin`,
/// oriented toward the mean displacement (ties: first nonzero coordinate positive).
/// Throws DegenerateError if every sample coincides with the origin.
[[nodiscard]] PrincipalAxis principal_axis(std::span<const Config> samples, const Config& origin,
                                           AxisCentering centering = AxisCentering::Origin);

/// Folds one more sample into the moments and re-extracts the axis, warm-started
/// from the previous one. The result never points against `prev.axis`.
[[nodiscard]] PrincipalAxis recalibrate_axis(const PrincipalAxis& prev, const Config& new_sample);

/// Returns `raw`, negated if it has a negative dot product with `reference`.
[[nodiscard]] Config align_with(const Config& reference, const Config& raw);

/// Leading eigenpair of a symmetric PSD matrix by power iteration from `start`,
/// falling back to a dense solver when the iteration does not settle.
struct Eigenpair {
    Config vector;
    double value = 0.0;
    double gap = 0.0;  // lambda1 - lambda2 when known (dense path), else lower bound estimate
};
[[nodiscard]] Eigenpair leading_eigenpair(const Eigen::MatrixXd& m, const Config& start);

/// N x (N-1) matrix whose columns are orthonormal and orthogonal to `a`.
[[nodiscard]] Eigen::MatrixXd orthonormal_basis(const Config& a);

enum class Direction { Positive, Negative };

struct CylinderSpec {
    Config axis;    // unit
    Config origin;
    Direction direction = Direction::Positive;
    double h_min = 0.0;
    double h_max = 0.0;
    double radius = 0.0;
};

struct CylinderSample {
    Config q;
    double height = 0.0;  // axial coordinate the sample was drawn at
};

/// Uniform sample from the solid cylinder of radius `radius` around the signed
/// axis, between heights h_min and h_max from the origin.
[[nodiscard]] CylinderSample sample_cylinder(const CylinderSpec& spec, RngStream& rng);

}  // namespace sisp
