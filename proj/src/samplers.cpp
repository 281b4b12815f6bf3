#include "sisp/samplers.hpp"

#include <cmath>

namespace sisp {

Config sample_uniform(const Bounds& bounds, RngStream& rng) {
    Config q(bounds.dimension());
    for (Eigen::Index i = 0; i < q.size(); ++i) {
        q[i] = std::min(rng.uniform(bounds.lo[i], bounds.hi[i]), bounds.hi[i]);
    }
    return q;
}

Config sample_uniform_on_sphere(const Config& center, double radius, RngStream& rng, bool solid) {
    const auto n = center.size();
    double r = radius;
    if (solid) r *= std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
    return center + r * rng.unit_vector(n);
}

Config fibonacci_lattice_point(int index, int count, Eigen::Index dimension) {
    require(dimension == 2 || dimension == 3, "Fibonacci lattice is defined for N = 2 and N = 3");
    require(count > 0 && index >= 0 && index < count, "lattice index out of range");
    const double azimuth = static_cast<double>(index) * kGoldenAngle;
    Config p(dimension);
    if (dimension == 2) {
        p << std::cos(azimuth), std::sin(azimuth);
        return p;
    }
    const double z = 1.0 - (2.0 * index + 1.0) / static_cast<double>(count);
    const double ring = std::sqrt(std::max(0.0, 1.0 - z * z));
    p << ring * std::cos(azimuth), ring * std::sin(azimuth), z;
    return p;
}

namespace {

Config jitter_direction(const Config& unit, double max_angle, RngStream& rng) {
    if (max_angle <= 0.0) return unit;
    const double angle = rng.uniform(-max_angle, max_angle);
    if (unit.size() == 2) {
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        Config out(2);
        out << c * unit[0] - s * unit[1], s * unit[0] + c * unit[1];
        return out;
    }
    // Rotate about a random axis in the tangent plane at `unit`; since the axis is
    // orthogonal to `unit`, Rodrigues' formula reduces to two terms.
    Eigen::Vector3d p = unit;
    Eigen::Vector3d axis;
    do {
        axis = rng.normal_vector(3);
        axis -= axis.dot(p) * p;
    } while (axis.norm() < 1e-9);
    axis.normalize();
    Eigen::Vector3d out = p * std::cos(angle) + axis.cross(p) * std::sin(angle);
    return out.normalized();
}

}  // namespace

std::vector<Config> sample_sphere_batch(const SphereBatchSpec& spec, RngStream& rng) {
    require(spec.radius > 0.0, "sphere batch radius must be positive");
    require(spec.batch_size >= 2, "sphere batch needs at least two samples");
    require(spec.jitter >= 0.0, "jitter must be non-negative");
    const auto n = spec.center.size();
    require(n >= 2, "sphere batch needs dimension >= 2");

    const int lattice_count = spec.batch_size / 2;
    std::vector<Config> batch;
    batch.reserve(static_cast<std::size_t>(spec.batch_size));
    for (int i = 0; i < spec.batch_size; ++i) {
        if (i % 2 == 0 || n > 3) {
            batch.push_back(sample_uniform_on_sphere(spec.center, spec.radius, rng, spec.solid));
            continue;
        }
        const Config dir = jitter_direction(fibonacci_lattice_point(i / 2, lattice_count, n), spec.jitter, rng);
        double r = spec.radius;
        if (spec.solid) r *= std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
        batch.push_back(spec.center + r * dir);
    }
    return batch;
}

std::optional<Config> sample_gaussian_obstacle(const Scene& scene, double stddev, RngStream& rng) {
    require(stddev > 0.0, "stddev must be positive");
    const Config q1 = sample_uniform(scene.bounds, rng);
    const Config q2 = q1 + stddev * rng.normal_vector(q1.size());
    const bool v1 = is_state_valid(scene, q1);
    const bool v2 = is_state_valid(scene, q2);
    if (v1 == v2) return std::nullopt;
    return v1 ? q1 : q2;
}

std::optional<Config> sample_bridge(const Scene& scene, double stddev, RngStream& rng) {
    require(stddev > 0.0, "stddev must be positive");
    const Config q1 = sample_uniform(scene.bounds, rng);
    if (is_state_valid(scene, q1)) return std::nullopt;
    const Config q2 = q1 + stddev * rng.normal_vector(q1.size());
    if (is_state_valid(scene, q2)) return std::nullopt;
    Config mid = 0.5 * (q1 + q2);
    if (!is_state_valid(scene, mid)) return std::nullopt;
    return mid;
}

std::optional<Config> sample_near_obstacle(const Scene& scene, RngStream& rng) {
    std::optional<Config> inside;
    std::optional<Config> outside;
    for (int attempt = 0; attempt < kNearObstacleRetries && !(inside && outside); ++attempt) {
        for (int k = 0; k < 2; ++k) {
            Config q = sample_uniform(scene.bounds, rng);
            if (is_state_valid(scene, q)) {
                if (!outside) outside = std::move(q);
            } else if (!inside) {
                inside = std::move(q);
            }
        }
    }
    if (!inside || !outside) return std::nullopt;
    Config invalid = *inside;
    Config valid = *outside;
    const double tol = scene.resolution();
    while ((valid - invalid).norm() > tol) {
        Config mid = 0.5 * (valid + invalid);
        if (is_state_valid(scene, mid)) {
            valid = std::move(mid);
        } else {
            invalid = std::move(mid);
        }
    }
    return valid;
}

}  // namespace sisp
