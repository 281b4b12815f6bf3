#include "sisp/scale_search.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "sisp/samplers.hpp"

namespace sisp {

void ScaleParams::validate() const {
    require(0.0 < alpha_min && alpha_min < alpha_max && alpha_max <= 1.0,
            "scale search: need 0 < alpha_min < alpha_max <= 1");
    require(shrink > 1.0 && grow > 1.0, "scale search: shrink and grow factors must exceed 1");
    require(0.0 < r_min && r_min <= r0 && r0 <= r_max, "scale search: need 0 < r_min <= r0 <= r_max");
    require(batch >= 2, "scale search: batch must hold at least two samples");
    require(max_steps >= 1, "scale search: max_steps must be positive");
    require(jitter >= 0.0, "scale search: jitter must be non-negative");
}

ScaleSearchResult find_entropy_scale(const Scene& scene, const Config& q0, const ScaleParams& params,
                                     RngStream& rng) {
    params.validate();
    require(is_state_valid(scene, q0), "scale search: q0 must be a valid configuration");

    ScaleSearchResult result;
    double r = params.r0;
    SphereBatchSpec spec{q0, r, params.batch, params.jitter, params.solid};
    for (int step = 0; step < params.max_steps; ++step) {
        spec.radius = r;
        const auto batch = sample_sphere_batch(spec, rng);
        std::vector<Config> fresh;
        for (const auto& q : batch) {
            if (check_motion(scene, q0, q)) fresh.push_back(q);
        }
        const double alpha = static_cast<double>(fresh.size()) / static_cast<double>(batch.size());
        result.history.push_back({r, alpha});

        if (alpha >= params.alpha_min && alpha <= params.alpha_max) {
            result.valid_samples.insert(result.valid_samples.end(), fresh.begin(), fresh.end());
            result.r_star = r;
            result.converged = true;
            return result;
        }
        if (alpha < params.alpha_min) {
            result.valid_samples.insert(result.valid_samples.end(), fresh.begin(), fresh.end());
            if (r <= params.r_min) break;  // shrinking further is a no-op under the clamp
            r = std::max(r / params.shrink, params.r_min);
        } else {
            r = std::min(r * params.grow, params.r_max);
        }
    }
    result.r_star = std::max(r, params.r_min);
    return result;
}

void write_scale_history_csv(std::ostream& out, const ScaleSearchResult& result) {
    out << "step,radius,alpha\n";
    char line[96];
    for (std::size_t i = 0; i < result.history.size(); ++i) {
        std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", i, result.history[i].radius,
                      result.history[i].alpha);
        out << line;
    }
}

}  // namespace sisp
