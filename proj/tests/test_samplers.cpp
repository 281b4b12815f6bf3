#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sisp/samplers.hpp"
#include "support.hpp"

using namespace sisp;
using sisp::test::vec;

namespace {

double min_angular_separation(const std::vector<Config>& dirs) {
    double best = std::numbers::pi;
    for (std::size_t i = 0; i < dirs.size(); ++i)
        for (std::size_t j = i + 1; j < dirs.size(); ++j) {
            const double c = std::clamp(dirs[i].normalized().dot(dirs[j].normalized()), -1.0, 1.0);
            best = std::min(best, std::acos(c));
        }
    return best;
}

}  // namespace

TEST_CASE("RngStream reproduces a sequence from its seed") {
    RngStream a(99), b(99), c(100);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        differs |= x != c.uniform();
    }
    CHECK(differs);
    CHECK(a.draws() == 100);
}

TEST_CASE("sample_uniform examples") {
    Bounds unit{vec({0, 0}), vec({1, 1})};
    RngStream rng(1);
    const Config p = sample_uniform(unit, rng);
    CHECK(unit.contains(p));
    RngStream again(1);
    CHECK(sample_uniform(unit, again) == p);

    Bounds tight{vec({2, 2}), vec({2 + 1e-9, 2 + 1e-9})};
    for (int i = 0; i < 100; ++i) CHECK(tight.contains(sample_uniform(tight, rng)));
}

TEST_CASE("sample_uniform moments") {
    Bounds unit{vec({0, 0}), vec({1, 1})};
    RngStream rng(2);
    constexpr int n = 100000;
    Eigen::Vector2d sum = Eigen::Vector2d::Zero();
    for (int i = 0; i < n; ++i) sum += sample_uniform(unit, rng);
    const double sigma = 1.0 / std::sqrt(12.0 * n);
    CHECK(std::abs(sum[0] / n - 0.5) < 3 * sigma);
    CHECK(std::abs(sum[1] / n - 0.5) < 3 * sigma);
}

TEST_CASE("sphere batch points lie on the surface") {
    RngStream rng(3);
    SphereBatchSpec spec{vec({0, 0}), 1.0, 4};
    const auto batch = sample_sphere_batch(spec, rng);
    REQUIRE(batch.size() == 4);
    for (const auto& p : batch) CHECK(std::abs(p.norm() - 1.0) < 1e-12);

    for (Eigen::Index dim : {2, 3, 5}) {
        for (double r : {1e-6, 0.3, 25.0}) {
            SphereBatchSpec s{Config::Constant(dim, 1.5), r, 64};
            for (const auto& p : sample_sphere_batch(s, rng)) REQUIRE(std::abs((p - s.center).norm() - r) < 1e-9 * r);
        }
    }
}

TEST_CASE("solid sphere batches stay inside the ball") {
    RngStream rng(4);
    SphereBatchSpec spec{vec({1, 1, 1}), 2.0, 64, std::numbers::pi / 8, true};
    bool interior = false;
    for (const auto& p : sample_sphere_batch(spec, rng)) {
        CHECK((p - spec.center).norm() <= 2.0 + 1e-12);
        interior |= (p - spec.center).norm() < 1.9;
    }
    CHECK(interior);
}

TEST_CASE("2D lattice points step by the golden angle") {
    CHECK(kGoldenAngle == doctest::Approx(2.39996).epsilon(1e-5));
    RngStream rng(5);
    SphereBatchSpec spec{vec({0, 0}), 1.0, 64, 0.0};
    const auto batch = sample_sphere_batch(spec, rng);
    for (int i = 3; i < 64; i += 2) {
        const double prev = std::atan2(batch[static_cast<std::size_t>(i - 2)][1], batch[static_cast<std::size_t>(i - 2)][0]);
        const double cur = std::atan2(batch[static_cast<std::size_t>(i)][1], batch[static_cast<std::size_t>(i)][0]);
        double gap = std::remainder(cur - prev - kGoldenAngle, 2.0 * std::numbers::pi);
        REQUIRE(std::abs(gap) < 1e-9);
    }
}

TEST_CASE("jitter perturbs 2D lattice points by at most the jitter angle") {
    RngStream rng(6);
    const double jitter = std::numbers::pi / 8;
    SphereBatchSpec spec{vec({0, 0}), 1.0, 64, jitter};
    const auto batch = sample_sphere_batch(spec, rng);
    bool moved = false;
    for (int i = 1; i < 64; i += 2) {
        const Config ref = fibonacci_lattice_point(i / 2, 32, 2);
        const double angle = std::acos(std::clamp(ref.dot(batch[static_cast<std::size_t>(i)]), -1.0, 1.0));
        CHECK(angle <= jitter + 1e-12);
        moved |= angle > 1e-6;
    }
    CHECK(moved);
}

TEST_CASE("3D jittered lattice half avoids clustering") {
    RngStream rng(7);
    std::vector<double> iid_min;
    for (int t = 0; t < 1000; ++t) {
        std::vector<Config> pts;
        for (int i = 0; i < 64; ++i) pts.push_back(rng.unit_vector(3));
        iid_min.push_back(min_angular_separation(pts));
    }
    std::sort(iid_min.begin(), iid_min.end());
    const double p5 = iid_min[50];

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RngStream r(seed);
        const auto batch = sample_sphere_batch({vec({0, 0, 0}), 1.0, 64}, r);
        std::vector<Config> lattice;
        for (std::size_t i = 1; i < batch.size(); i += 2) lattice.push_back(batch[i]);
        CHECK(min_angular_separation(lattice) > p5);
    }
}

TEST_CASE("sphere batches are deterministic per seed") {
    SphereBatchSpec spec{vec({0, 0, 0}), 2.0, 16};
    RngStream a(8), b(8);
    const auto x = sample_sphere_batch(spec, a);
    const auto y = sample_sphere_batch(spec, b);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == y[i]);
}

TEST_CASE("gaussian sampler") {
    RngStream rng(9);
    const Scene empty = test::empty_world();
    // The workspace bounds are the only boundary here; a spread far below the
    // bounds keeps both draws inside.
    for (int i = 0; i < 200; ++i) CHECK_FALSE(sample_gaussian_obstacle(empty, 1e-9, rng).has_value());
    int edge_hits = 0;
    for (int i = 0; i < 2000; ++i)
        if (auto q = sample_gaussian_obstacle(empty, 1.0, rng)) {
            ++edge_hits;
            CHECK(is_state_valid(empty, *q));
        }
    CHECK(edge_hits < 400);
    const Scene full = test::full_grid(true);
    int accepted = 0;
    for (int i = 0; i < 200; ++i) {
        if (auto q = sample_gaussian_obstacle(full, 0.5, rng)) {
            ++accepted;
            CHECK(is_state_valid(full, *q));
        }
    }
    CHECK(accepted < 200);
    const Scene sealed = test::full_grid(false);
    for (int i = 0; i < 200; ++i) CHECK_FALSE(sample_gaussian_obstacle(sealed, 0.5, rng).has_value());
}

TEST_CASE("gaussian samples concentrate at the boundary") {
    const Scene half = test::box_world(10, {Box{vec({0, -10}), vec({10, 10})}}, vec({-5, 0}), EscapeGoal{1});
    RngStream rng(10);
    double sum = 0.0;
    int n = 0;
    for (int i = 0; i < 10000; ++i)
        if (auto q = sample_gaussian_obstacle(half, 1.0, rng)) {
            REQUIRE(is_state_valid(half, *q));
            sum += std::abs((*q)[0]);
            ++n;
        }
    REQUIRE(n > 100);
    CHECK(sum / n < 5.0);
}

TEST_CASE("bridge sampler") {
    RngStream rng(11);
    const Scene empty = test::empty_world();
    for (int i = 0; i < 200; ++i) CHECK_FALSE(sample_bridge(empty, 1.0, rng).has_value());
    const Scene sealed = test::full_grid(false);
    for (int i = 0; i < 200; ++i) CHECK_FALSE(sample_bridge(sealed, 1.0, rng).has_value());

    // Two slabs with a one-unit slit around y = 0.
    const Scene slit = test::box_world(10, {Box{vec({-10, 0.5}), vec({10, 10})}, Box{vec({-10, -10}), vec({10, -0.5})}},
                                       vec({0, 0}), EscapeGoal{1});
    int accepted = 0, inside = 0;
    while (accepted < 1000) {
        if (auto q = sample_bridge(slit, 1.0, rng)) {
            REQUIRE(is_state_valid(slit, *q));
            ++accepted;
            if (std::abs((*q)[1]) < 0.5) ++inside;
        }
    }
    CHECK(inside > 900);
}

TEST_CASE("near-obstacle sampler") {
    RngStream rng(12);
    CHECK_FALSE(sample_near_obstacle(test::empty_world(), rng).has_value());
    CHECK_FALSE(sample_near_obstacle(test::full_grid(false), rng).has_value());

    const Scene sphere = test::box_world(2, {Sphere{vec({0, 0}), 1.0}}, vec({1.5, 1.5}), EscapeGoal{1});
    int accepted = 0;
    for (int i = 0; i < 500; ++i)
        if (auto q = sample_near_obstacle(sphere, rng)) {
            ++accepted;
            const double r = q->norm();
            CHECK(r >= 1.0);
            CHECK(r <= 1.0 + sphere.resolution());
        }
    CHECK(accepted == 500);
}
