#pragma once

#include <numbers>
#include <optional>
#include <vector>

#include "sisp/cspace.hpp"
#include "sisp/rng.hpp"

namespace sisp {

/// Golden angle 2*pi*(1 - 1/phi), the azimuthal increment of Fibonacci lattices.
inline constexpr double kGoldenAngle = 2.0 * std::numbers::pi * (1.0 - 1.0 / std::numbers::phi);

struct SphereBatchSpec {
    Config center;
    double radius = 1.0;
    int batch_size = 64;
    /// Maximum angular perturbation of lattice points, radians.
    double jitter = std::numbers::pi / 8.0;
    /// Draw from the solid ball instead of the sphere surface.
    bool solid = false;
};

[[nodiscard]] Config sample_uniform(const Bounds& bounds, RngStream& rng);

/// Uniform point on the sphere (or in the ball when `solid`) of the given radius.
[[nodiscard]] Config sample_uniform_on_sphere(const Config& center, double radius, RngStream& rng,
                                              bool solid = false);

/// Unit-radius Fibonacci lattice point `index` of `count` (N = 2 or 3, no jitter).
[[nodiscard]] Config fibonacci_lattice_point(int index, int count, Eigen::Index dimension);

/// Batch on the sphere around `spec.center`: even indices are uniform-on-sphere draws,
/// odd indices walk a jittered Fibonacci lattice (N = 2, 3; uniform for N > 3).
[[nodiscard]] std::vector<Config> sample_sphere_batch(const SphereBatchSpec& spec, RngStream& rng);

/// Default standard deviation of the Gaussian and bridge samplers: 5% of the bounds diagonal.
[[nodiscard]] inline double default_sampler_stddev(const Scene& scene) {
    return 0.05 * scene.bounds.diagonal();
}

inline constexpr int kNearObstacleRetries = 100;

[[nodiscard]] std::optional<Config> sample_gaussian_obstacle(const Scene& scene, double stddev, RngStream& rng);
[[nodiscard]] std::optional<Config> sample_bridge(const Scene& scene, double stddev, RngStream& rng);
[[nodiscard]] std::optional<Config> sample_near_obstacle(const Scene& scene, RngStream& rng);

}  // namespace sisp
