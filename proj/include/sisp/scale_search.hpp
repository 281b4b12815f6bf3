#pragma once

#include <cmath>
#include <iosfwd>
#include <numbers>
#include <vector>

#include "sisp/cspace.hpp"
#include "sisp/rng.hpp"

namespace sisp {

/// Parameters of the grow-shrink search for a high-information-entropy radius.
///
/// `grow` and `shrink` are both multipliers greater than one: a batch whose
/// validity rate is above the target interval multiplies the radius by `grow`,
/// one below it divides the radius by `shrink`.
struct ScaleParams {
    double r0 = 1.0;
    double alpha_min = 0.1;
    double alpha_max = 0.5;
    double shrink = std::exp(0.9);
    double grow = std::exp(0.7);
    double r_min = 1e-6;
    double r_max = 25.0;
    int batch = 64;
    int max_steps = 50;
    double jitter = std::numbers::pi / 8.0;
    bool solid = false;

    void validate() const;
};

struct ScaleStep {
    double radius = 0.0;
    double alpha = 0.0;
};

struct ScaleSearchResult {
    double r_star = 0.0;
    std::vector<Config> valid_samples;
    bool converged = false;
    std::vector<ScaleStep> history;
};

/// Grow-shrink search at `q0`. Batches on the sphere of the current radius are
/// motion-checked from `q0`; the search stops at the first radius whose
/// validity rate lies in [alpha_min, alpha_max]. Valid samples of accepted and
/// shrinking batches are kept; growing batches are discarded.
[[nodiscard]] ScaleSearchResult find_entropy_scale(const Scene& scene, const Config& q0,
                                                   const ScaleParams& params, RngStream& rng);

/// Writes `step,radius,alpha` rows.
void write_scale_history_csv(std::ostream& out, const ScaleSearchResult& result);

}  // namespace sisp
