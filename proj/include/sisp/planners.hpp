#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sisp/bandit.hpp"
#include "sisp/cspace.hpp"
#include "sisp/pca_cylinder.hpp"
#include "sisp/rng.hpp"
#include "sisp/scale_search.hpp"
#include "sisp/tree.hpp"

namespace sisp {

enum class SamplerKind { Uniform, Gaussian, Bridge, Obstacle };

/// How a valid principal-component extension expands r*.
enum class ReachRule {
    /// Axial height of the node actually added, measured along the arm's signed
    /// axis. Equals the drawn height whenever steer reaches the sample.
    AddedNode,
    /// Drawn cylinder height even when steer stopped short of the sample. Every
    /// valid extension then multiplies r* by up to (1 + delta), so r* outruns the tree.
    SampleHeight,
};

struct PlannerParams {
    /// Steer step; unset means 2.5% of the bounds diagonal.
    std::optional<double> eta;
    double timeout_s = 10.0;
    long max_iterations = 1'000'000;
    /// Cylinder extension factor: PC arms sample heights in [r*, r* + delta * r*].
    double delta = 1.0;
    /// Cylinder radius as a fraction of r*.
    double kappa = 0.25;
    ScaleParams scale;
    std::size_t window = 256;
    double beta = std::sqrt(2.0);
    RewardConstants reward;
    AxisCentering centering = AxisCentering::Origin;
    ReachRule reach = ReachRule::AddedNode;
    std::array<bool, kArmCount> arms_enabled{true, true, true};
    /// Gaussian / bridge spread; unset means 5% of the bounds diagonal.
    std::optional<double> sampler_stddev;
    /// Keep per-iteration rows and the final tree in the result.
    bool record_trace = false;

    [[nodiscard]] double step(const Scene& scene) const { return eta.value_or(0.025 * scene.bounds.diagonal()); }
    void validate() const;
};

enum class Outcome { Solved, Timeout, Exhausted };

[[nodiscard]] std::string_view outcome_name(Outcome outcome) noexcept;

struct TraceRow {
    long iteration = 0;
    std::string arm;
    bool valid = false;
    double reward = 0.0;
    double r_star = 0.0;
    std::size_t tree_size = 0;
    std::array<double, kArmCount> ucb{};
};

struct PlannerStats {
    long iterations = 0;
    double wall_time_s = 0.0;
    std::size_t tree_size = 0;
    double r_star = 0.0;
    bool scale_converged = false;
    std::array<std::size_t, kArmCount> pulls{};
    std::array<double, kArmCount> cumulative_reward{};
    std::vector<std::string> diagnostics;
};

struct PlannerResult {
    Outcome outcome = Outcome::Exhausted;
    std::vector<Config> path;
    PlannerStats stats;
    /// Populated when PlannerParams::record_trace is set.
    std::vector<TraceRow> trace;
    std::optional<Tree> tree;
    std::optional<PrincipalAxis> axis;

    [[nodiscard]] bool solved() const noexcept { return outcome == Outcome::Solved; }
};

[[nodiscard]] double path_length(const std::vector<Config>& path);

/// RRT driven by one fixed sampler; biased samplers fall back to a uniform draw
/// when they return nothing.
[[nodiscard]] PlannerResult rrt_plan(const Scene& scene, SamplerKind sampler, const PlannerParams& params,
                                     RngStream& rng);

/// Scale-invariant multi-arm-bandit RRT: grow-shrink scale search at the start,
/// burn-in samples seed the tree, and a sliding-window UCB bandit chooses between
/// uniform sampling and cylinder sampling along +/- the principal escape axis.
[[nodiscard]] PlannerResult mab_rrt_plan(const Scene& scene, const PlannerParams& params, RngStream& rng);

/// Planner names: mab-rrt, rrt-uniform, rrt-gaussian, rrt-bridge, rrt-obstacle.
[[nodiscard]] const std::vector<std::string>& planner_names();
[[nodiscard]] bool is_planner_name(std::string_view name);
[[nodiscard]] PlannerResult run_planner(std::string_view name, const Scene& scene, const PlannerParams& params,
                                        RngStream& rng);

/// Deterministic JSON trace: iteration rows, tree dump (nodes, parents, tags), path.
/// Wall-clock time is deliberately excluded so identical runs give identical bytes.
void write_trace(std::ostream& out, const Scene& scene, std::string_view planner, std::uint64_t seed,
                 const PlannerResult& result);

struct TreeDump {
    std::vector<Config> nodes;
    std::vector<std::size_t> parents;
    std::vector<NodeTag> tags;
    std::vector<Config> path;
    double r_star = 0.0;
};

[[nodiscard]] TreeDump read_trace(std::istream& in);

}  // namespace sisp
