#include "sisp/pca_cylinder.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace sisp {

namespace {

constexpr int kPowerIterations = 1000;
constexpr double kResidualTol = 1e-12;
constexpr double kIsotropicGap = 1e-12;

// Sign rule for a freshly extracted axis: agree with the mean displacement;
// if orthogonal to it, make the first nonzero coordinate positive.
Config orient(Config v, const Config& mean_direction) {
    const double d = v.dot(mean_direction);
    if (std::abs(d) > 1e-12 * mean_direction.norm()) return d < 0.0 ? Config(-v) : v;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-12) return v[i] < 0.0 ? Config(-v) : v;
    }
    return v;
}

Eigenpair dense_leading(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    const auto n = m.rows();
    Eigenpair out;
    out.vector = solver.eigenvectors().col(n - 1);
    out.value = solver.eigenvalues()[n - 1];
    out.gap = n > 1 ? out.value - solver.eigenvalues()[n - 2] : out.value;
    return out;
}

}  // namespace

Eigen::MatrixXd PrincipalAxis::moment_matrix() const {
    if (centering == AxisCentering::Origin || count == 0) return outer_sum;
    const double n = static_cast<double>(count);
    const Config mean = sum / n;
    return outer_sum / n - mean * mean.transpose();
}

Eigenpair leading_eigenpair(const Eigen::MatrixXd& m, const Config& start) {
    const auto n = m.rows();
    require(m.cols() == n && start.size() == n, "leading_eigenpair: shape mismatch");
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return {start.normalized(), 0.0, 0.0};

    Config v = start;
    if (!(v.norm() > 0.0) || !v.allFinite()) {
        Eigen::Index i = 0;
        m.diagonal().maxCoeff(&i);
        v = Config::Unit(n, i);
    }
    v.normalize();
    for (int it = 0; it < kPowerIterations; ++it) {
        const Config w = m * v;
        const double lambda = v.dot(w);
        const double residual = (w - lambda * v).norm();
        if (residual <= kResidualTol * scale) {
            // Converged before the warm start decayed: lambda dominates whatever
            // the start overlaps, gap unknown but treated as non-degenerate.
            return {v, lambda, lambda};
        }
        const double wn = w.norm();
        if (wn == 0.0) break;
        v = w / wn;
    }
    return dense_leading(m);
}

Config align_with(const Config& reference, const Config& raw) {
    return reference.dot(raw) < 0.0 ? Config(-raw) : raw;
}

PrincipalAxis principal_axis(std::span<const Config> samples, const Config& origin, AxisCentering centering) {
    require(!samples.empty(), "principal_axis: no samples");
    const auto n = origin.size();
    PrincipalAxis pa;
    pa.origin = origin;
    pa.centering = centering;
    pa.sum = Config::Zero(n);
    pa.outer_sum = Eigen::MatrixXd::Zero(n, n);
    for (const auto& s : samples) {
        require(s.size() == n, "principal_axis: dimension mismatch");
        const Config d = s - origin;
        pa.sum += d;
        pa.outer_sum.noalias() += d * d.transpose();
        ++pa.count;
    }
    if (pa.outer_sum.trace() == 0.0) throw DegenerateError("principal_axis: every sample equals the origin");

    const Eigen::MatrixXd m = pa.moment_matrix();
    if (m.cwiseAbs().maxCoeff() == 0.0) {
        // Mean-centered moments of identical samples: fall back to the mean direction.
        pa.axis = pa.sum.normalized();
        pa.eigenvalue = 0.0;
        return pa;
    }
    const Eigenpair eig = dense_leading(m);
    pa.axis = orient(eig.vector.normalized(), pa.sum);
    pa.eigenvalue = eig.value;
    return pa;
}

PrincipalAxis recalibrate_axis(const PrincipalAxis& prev, const Config& new_sample) {
    require(new_sample.size() == prev.origin.size(), "recalibrate_axis: dimension mismatch");
    PrincipalAxis next = prev;
    const Config d = new_sample - prev.origin;
    next.sum += d;
    next.outer_sum.noalias() += d * d.transpose();
    ++next.count;

    const Eigen::MatrixXd m = next.moment_matrix();
    const Eigenpair eig = leading_eigenpair(m, prev.axis);
    if (eig.value <= 0.0 || eig.gap < kIsotropicGap * eig.value) return next;  // no usable direction
    next.axis = align_with(prev.axis, eig.vector.normalized());
    next.eigenvalue = eig.value;
    return next;
}

Eigen::MatrixXd orthonormal_basis(const Config& a) {
    const double norm = a.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw DegenerateError("orthonormal_basis: zero vector");
    const auto n = a.size();
    // Householder reflection H with H u = -sign(u0) e0; columns 1..N-1 of H span
    // the orthogonal complement of u.
    Config w = a / norm;
    w[0] += w[0] >= 0.0 ? 1.0 : -1.0;
    const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - (2.0 / w.squaredNorm()) * (w * w.transpose());
    return h.rightCols(n - 1);
}

CylinderSample sample_cylinder(const CylinderSpec& spec, RngStream& rng) {
    require(0.0 <= spec.h_min && spec.h_min <= spec.h_max, "cylinder: need 0 <= h_min <= h_max");
    require(spec.radius >= 0.0, "cylinder: radius must be non-negative");
    const auto n = spec.axis.size();
    require(n >= 2 && spec.origin.size() == n, "cylinder: dimension mismatch");

    const Config signed_axis = spec.direction == Direction::Positive ? Config(spec.axis.normalized())
                                                                     : Config(-spec.axis.normalized());
    const double h = rng.uniform(spec.h_min, spec.h_max);

    const double u = rng.uniform();
    Config t;
    do {
        t = rng.normal_vector(n - 1);
    } while (t.norm() == 0.0);
    const double p = spec.radius * std::pow(u, 1.0 / static_cast<double>(n - 1));
    const Config offset = (p / t.norm()) * t;

    return {spec.origin + h * signed_axis + orthonormal_basis(signed_axis) * offset, h};
}

}  // namespace sisp
