#pragma once

// Independent reference implementations and scene builders for the test suites.
// Nothing here calls into the library's own solvers or samplers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "sisp/bandit.hpp"
#include "sisp/cspace.hpp"

namespace sisp::test {

inline Config vec(std::initializer_list<double> xs) {
    Config v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

inline Scene box_world(double half, std::vector<Obstacle> obstacles, Config start, GoalSpec goal,
                       Eigen::Index dim = 2) {
    Scene s;
    s.name = "test";
    s.bounds.lo = Config::Constant(dim, -half);
    s.bounds.hi = Config::Constant(dim, half);
    s.world = std::move(obstacles);
    s.start = std::move(start);
    s.goal = std::move(goal);
    return s;
}

inline Scene empty_world(double half = 10.0, Eigen::Index dim = 2) {
    return box_world(half, {}, Config::Zero(dim), EscapeGoal{half / 2.0}, dim);
}

/// Grid with every cell occupied except, optionally, the one holding the start.
inline Scene full_grid(bool free_start_cell) {
    Scene s;
    s.name = "full";
    s.bounds.lo = vec({0, 0});
    s.bounds.hi = vec({10, 10});
    OccupancyGrid g;
    g.width = 10;
    g.height = 10;
    g.resolution = 1.0;
    g.origin = vec({0, 0});
    g.occupied.assign(100, 1);
    if (free_start_cell) g.occupied[5 * 10 + 5] = 0;
    s.world = g;
    s.start = vec({5.5, 5.5});
    s.goal = EscapeGoal{3.0};
    return s;
}

/// Corridor along +x: walls over x in [-50, mouth] at |y| >= 2.5, start deep
/// inside against the left bound, goal off the corridor axis in open space.
inline constexpr double kCorridorMouth = -10.0;

inline Scene corridor_scene() {
    Scene s = box_world(50, {Box{vec({-50, 2.5}), vec({kCorridorMouth, 50})}, Box{vec({-50, -50}), vec({kCorridorMouth, -2.5})}},
                        vec({-47.5, 0}), BallGoal{vec({35, 35}), 5.0});
    s.name = "corridor";
    return s;
}

// ---------------------------------------------------------------------------
// Geometry

/// Distance from p to the segment [a, b].
inline double point_segment_distance(const Config& p, const Config& a, const Config& b) {
    const Config ab = b - a;
    const double len2 = ab.squaredNorm();
    double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return (a + t * ab - p).norm();
}

inline std::size_t linear_nearest(const std::vector<Config>& pts, const Config& q) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = (pts[i] - q).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Linear algebra

struct JacobiResult {
    Eigen::VectorXd values;   // descending
    Eigen::MatrixXd vectors;  // columns match values
};

/// Cyclic Jacobi eigensolver for small symmetric matrices.
inline JacobiResult jacobi_eigen(Eigen::MatrixXd a) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-30 * std::max(1.0, a.squaredNorm())) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) > a(j, j); });
    JacobiResult r{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        r.values[k] = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
        r.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    return r;
}

/// Leading eigenvector of sum (s - origin)(s - origin)^T.
inline Config oracle_axis(const std::vector<Config>& samples, const Config& origin) {
    const Eigen::Index n = origin.size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (const auto& s : samples) {
        const Config d = s - origin;
        m += d * d.transpose();
    }
    return jacobi_eigen(m).vectors.col(0);
}

/// Distance between two unit directions modulo sign.
inline double sign_free_gap(const Config& a, const Config& b) {
    return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());
}

// ---------------------------------------------------------------------------
// Bandit

inline ArmId brute_force_ucb(const std::vector<WindowEntry>& window, double beta,
                             std::array<bool, kArmCount> enabled = {true, true, true}) {
    std::array<double, kArmCount> sum{};
    std::array<double, kArmCount> n{};
    for (const auto& e : window) {
        sum[index_of(e.arm)] += e.reward;
        n[index_of(e.arm)] += 1.0;
    }
    const double total = static_cast<double>(window.size());
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int b = 0; b < 3; ++b) {
        if (!enabled[static_cast<std::size_t>(b)]) continue;
        const auto i = static_cast<std::size_t>(b);
        const double mean = n[i] > 0 ? sum[i] / n[i] : 0.0;
        const double score = mean + beta * std::sqrt(std::log(total + 1.0) / (n[i] + 1.0));
        if (score > best_score) {
            best_score = score;
            best = b;
        }
    }
    return static_cast<ArmId>(best);
}

// ---------------------------------------------------------------------------
// Statistics

/// Wilson score interval at 95%.
inline std::pair<double, double> wilson95(std::size_t successes, std::size_t n) {
    const double z = 1.959963984540054;
    const double p = static_cast<double>(successes) / static_cast<double>(n);
    const double dn = static_cast<double>(n);
    const double denom = 1.0 + z * z / dn;
    const double centre = (p + z * z / (2.0 * dn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / dn + z * z / (4.0 * dn * dn)) / denom;
    return {centre - half, centre + half};
}

/// Upper 1% point of the chi-squared distribution with 9 degrees of freedom.
inline constexpr double kChi2Crit9dof_p01 = 21.665994333461924;

inline double chi2_uniform(const std::vector<double>& xs, double lo, double hi, int bins) {
    std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
    for (double x : xs) {
        auto k = static_cast<int>((x - lo) / (hi - lo) * bins);
        k = std::clamp(k, 0, bins - 1);
        counts[static_cast<std::size_t>(k)] += 1.0;
    }
    const double expected = static_cast<double>(xs.size()) / bins;
    double chi2 = 0.0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    return chi2;
}

/// Fraction of uniform-on-sphere points at radius r around q0 reachable by a
/// valid straight motion, drawn with a generator separate from the library's.
inline std::size_t monte_carlo_valid(const Scene& scene, const Config& q0, double r, std::size_t n,
                                     std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    std::size_t ok = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Config d(q0.size());
        do {
            for (Eigen::Index k = 0; k < d.size(); ++k) d[k] = normal(gen);
        } while (d.norm() < 1e-12);
        const Config q = q0 + r * d / d.norm();
        if (check_motion(scene, q0, q)) ++ok;
    }
    return ok;
}

}  // namespace sisp::test
