#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "sisp/types.hpp"

namespace sisp {

/// Seeded random stream. The real-valued draws are computed here from the raw
/// 64-bit engine output instead of through <random> distributions, whose
/// algorithms are implementation-defined, so that a seed reproduces the same
/// sequence bit-for-bit on every standard library.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t draws() const noexcept { return draws_; }

    std::uint64_t next_u64() {
        ++draws_;
        return engine_();
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; consumes two uniforms per draw.
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    Config normal_vector(Eigen::Index n) {
        Config v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
        return v;
    }

    /// Uniformly distributed unit vector in R^n.
    Config unit_vector(Eigen::Index n) {
        for (;;) {
            Config v = normal_vector(n);
            const double norm = v.norm();
            if (norm > 1e-12) return v / norm;
        }
    }

private:
    std::uint64_t seed_;
    std::uint64_t draws_ = 0;
    std::mt19937_64 engine_;
};

}  // namespace sisp
