#include "sisp/planners.hpp"

#include <algorithm>
#include <chrono>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "sisp/samplers.hpp"

namespace sisp {

namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
public:
    explicit Deadline(double seconds)
        : start_(Clock::now()),
          end_(start_ + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds))) {}
    [[nodiscard]] bool expired() const { return Clock::now() >= end_; }
    [[nodiscard]] double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

private:
    Clock::time_point start_;
    Clock::time_point end_;
};

NodeTag tag_for(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::Uniform: return NodeTag::Uniform;
        case SamplerKind::Gaussian: return NodeTag::Gaussian;
        case SamplerKind::Bridge: return NodeTag::Bridge;
        case SamplerKind::Obstacle: return NodeTag::Obstacle;
    }
    return NodeTag::Uniform;
}

NodeTag tag_for(ArmId arm) {
    switch (arm) {
        case ArmId::Uniform: return NodeTag::Uniform;
        case ArmId::PCPositive: return NodeTag::PCPositive;
        case ArmId::PCNegative: return NodeTag::PCNegative;
    }
    return NodeTag::Uniform;
}

void finish(PlannerResult& result, const Tree& tree, const Deadline& clock, bool keep_tree) {
    result.stats.wall_time_s = clock.elapsed();
    result.stats.tree_size = tree.size();
    if (keep_tree) result.tree = tree;
}

}  // namespace

void PlannerParams::validate() const {
    require(!eta || *eta > 0.0, "planner: eta must be positive");
    require(timeout_s > 0.0, "planner: timeout must be positive");
    require(max_iterations >= 0, "planner: max_iterations must be non-negative");
    require(delta >= 0.0, "planner: delta must be non-negative");
    require(kappa >= 0.0, "planner: kappa must be non-negative");
    require(!sampler_stddev || *sampler_stddev > 0.0, "planner: sampler stddev must be positive");
    scale.validate();
}

std::string_view outcome_name(Outcome outcome) noexcept {
    switch (outcome) {
        case Outcome::Solved: return "solved";
        case Outcome::Timeout: return "timeout";
        case Outcome::Exhausted: return "exhausted";
    }
    return "unknown";
}

double path_length(const std::vector<Config>& path) {
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) total += (path[i] - path[i - 1]).norm();
    return total;
}

PlannerResult rrt_plan(const Scene& scene, SamplerKind sampler, const PlannerParams& params, RngStream& rng) {
    params.validate();
    const Deadline clock(params.timeout_s);
    const double eta = params.step(scene);
    const double stddev = params.sampler_stddev.value_or(default_sampler_stddev(scene));
    const NodeTag tag = tag_for(sampler);

    PlannerResult result;
    Tree tree(scene.start);
    if (goal_satisfied(scene, scene.start)) {
        result.outcome = Outcome::Solved;
        result.path = {scene.start};
        finish(result, tree, clock, params.record_trace);
        return result;
    }

    result.outcome = Outcome::Exhausted;
    for (long iter = 1; iter <= params.max_iterations; ++iter) {
        if (clock.expired()) {
            result.outcome = Outcome::Timeout;
            break;
        }
        result.stats.iterations = iter;
        std::optional<Config> drawn;
        switch (sampler) {
            case SamplerKind::Uniform: break;
            case SamplerKind::Gaussian: drawn = sample_gaussian_obstacle(scene, stddev, rng); break;
            case SamplerKind::Bridge: drawn = sample_bridge(scene, stddev, rng); break;
            case SamplerKind::Obstacle: drawn = sample_near_obstacle(scene, rng); break;
        }
        const Config sample = drawn ? std::move(*drawn) : sample_uniform(scene.bounds, rng);
        const std::size_t near = tree.nearest(sample);
        const Config x_new = steer(tree.node(near), sample, eta);
        const bool valid = check_motion(scene, tree.node(near), x_new);
        std::size_t added = 0;
        if (valid) added = tree.add(x_new, near, tag);
        if (params.record_trace) {
            result.trace.push_back({iter, std::string(tag_name(tag)), valid, 0.0, 0.0, tree.size(), {}});
        }
        if (valid && goal_satisfied(scene, x_new)) {
            result.outcome = Outcome::Solved;
            result.path = extract_path(tree, added);
            break;
        }
    }
    finish(result, tree, clock, params.record_trace);
    return result;
}

PlannerResult mab_rrt_plan(const Scene& scene, const PlannerParams& params, RngStream& rng) {
    params.validate();
    const Deadline clock(params.timeout_s);
    const double eta = params.step(scene);
    const Config& start = scene.start;

    PlannerResult result;
    auto& stats = result.stats;

    ScaleSearchResult scale = find_entropy_scale(scene, start, params.scale, rng);
    double r_star = scale.r_star;
    stats.r_star = r_star;
    stats.scale_converged = scale.converged;
    if (!scale.converged) stats.diagnostics.emplace_back("scale search did not converge; using last radius");

    Tree tree(start);
    for (const auto& v : scale.valid_samples) tree.add(v, 0, NodeTag::BurnIn);

    const auto solve_at = [&](std::size_t leaf) {
        result.outcome = Outcome::Solved;
        result.path = extract_path(tree, leaf);
    };

    for (std::size_t i = 0; i < tree.size(); ++i) {
        if (goal_satisfied(scene, tree.node(i))) {
            solve_at(i);
            finish(result, tree, clock, params.record_trace);
            return result;
        }
    }

    BanditState bandit(params.window, params.beta, params.reward);
    for (ArmId arm : kArms) bandit.set_enabled(arm, params.arms_enabled[index_of(arm)]);

    std::optional<PrincipalAxis> axis;
    if (!scale.valid_samples.empty()) {
        axis = principal_axis(scale.valid_samples, start, params.centering);
    } else {
        stats.diagnostics.emplace_back("scale search produced no valid samples; uniform arm only");
        bandit.set_enabled(ArmId::PCPositive, false);
        bandit.set_enabled(ArmId::PCNegative, false);
    }
    require(bandit.enabled(ArmId::Uniform) || bandit.enabled(ArmId::PCPositive) ||
                bandit.enabled(ArmId::PCNegative),
            "mab-rrt: no sampler arm is enabled");

    result.outcome = Outcome::Exhausted;
    for (long iter = 1; iter <= params.max_iterations; ++iter) {
        if (clock.expired()) {
            result.outcome = Outcome::Timeout;
            break;
        }
        stats.iterations = iter;
        const double h_ext = params.delta * r_star;
        const auto ucb = bandit.scores();
        const ArmId arm = bandit.select_arm();

        Config sample;
        Config sample_axis;
        double sample_height = 0.0;
        if (arm == ArmId::Uniform) {
            sample = sample_uniform(scene.bounds, rng);
        } else {
            const CylinderSpec spec{axis->axis,
                                    start,
                                    arm == ArmId::PCPositive ? Direction::Positive : Direction::Negative,
                                    r_star,
                                    r_star + h_ext,
                                    params.kappa * r_star};
            sample_axis = axis->axis;
            auto drawn = sample_cylinder(spec, rng);
            sample = std::move(drawn.q);
            sample_height = drawn.height;
        }

        const std::size_t near = tree.nearest(sample);
        const Config x_new = steer(tree.node(near), sample, eta);
        const bool valid = check_motion(scene, tree.node(near), x_new);
        std::size_t added = 0;
        if (valid) {
            added = tree.add(x_new, near, tag_for(arm));
            if (arm != ArmId::Uniform) {
                double reach = sample_height;
                if (params.reach == ReachRule::AddedNode) {
                    const double sign = arm == ArmId::PCPositive ? 1.0 : -1.0;
                    reach = sign * (x_new - start).dot(sample_axis);
                }
                axis = recalibrate_axis(*axis, x_new);
                r_star = std::max(r_star, reach);
            }
        }
        const double reward = compute_reward(arm, valid, valid ? distance(x_new, start) : 0.0, params.reward);
        bandit.update(arm, reward);
        if (params.record_trace) {
            result.trace.push_back({iter, std::string(arm_name(arm)), valid, reward, r_star, tree.size(), ucb});
        }
        if (valid && goal_satisfied(scene, x_new)) {
            solve_at(added);
            break;
        }
    }

    stats.r_star = r_star;
    for (ArmId arm : kArms) {
        stats.pulls[index_of(arm)] = bandit.lifetime_pulls(arm);
        stats.cumulative_reward[index_of(arm)] = bandit.cumulative(arm);
    }
    result.axis = axis;
    finish(result, tree, clock, params.record_trace);
    return result;
}

const std::vector<std::string>& planner_names() {
    static const std::vector<std::string> names{"mab-rrt", "rrt-uniform", "rrt-gaussian", "rrt-bridge",
                                                "rrt-obstacle"};
    return names;
}

bool is_planner_name(std::string_view name) {
    const auto& names = planner_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

PlannerResult run_planner(std::string_view name, const Scene& scene, const PlannerParams& params, RngStream& rng) {
    if (name == "mab-rrt") return mab_rrt_plan(scene, params, rng);
    if (name == "rrt-uniform") return rrt_plan(scene, SamplerKind::Uniform, params, rng);
    if (name == "rrt-gaussian") return rrt_plan(scene, SamplerKind::Gaussian, params, rng);
    if (name == "rrt-bridge") return rrt_plan(scene, SamplerKind::Bridge, params, rng);
    if (name == "rrt-obstacle") return rrt_plan(scene, SamplerKind::Obstacle, params, rng);
    throw ContractError("unknown planner \"" + std::string(name) + "\"");
}

// ---------------------------------------------------------------------------
// Trace file

namespace {

using nlohmann::json;

json coords(const Config& q) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < q.size(); ++i) arr.push_back(q[i]);
    return arr;
}

Config from_coords(const json& j) {
    Config q(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) q[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    return q;
}

}  // namespace

void write_trace(std::ostream& out, const Scene& scene, std::string_view planner, std::uint64_t seed,
                 const PlannerResult& result) {
    json doc;
    doc["scene"] = scene.name;
    doc["planner"] = std::string(planner);
    doc["seed"] = seed;
    doc["outcome"] = std::string(outcome_name(result.outcome));
    doc["r_star"] = result.stats.r_star;
    doc["iterations_run"] = result.stats.iterations;

    json rows = json::array();
    for (const auto& r : result.trace) {
        rows.push_back({r.iteration, r.arm, r.valid, r.reward, r.r_star, r.tree_size, r.ucb[0], r.ucb[1], r.ucb[2]});
    }
    doc["iterations"] = {{"columns",
                          {"iter", "arm", "valid", "reward", "r_star", "tree_size", "ucb_uniform", "ucb_pc_positive",
                           "ucb_pc_negative"}},
                         {"rows", rows}};

    json tree = {{"nodes", json::array()}, {"parents", json::array()}, {"tags", json::array()}};
    if (result.tree) {
        for (std::size_t i = 0; i < result.tree->size(); ++i) {
            tree["nodes"].push_back(coords(result.tree->node(i)));
            tree["parents"].push_back(result.tree->parent(i));
            tree["tags"].push_back(std::string(tag_name(result.tree->tag(i))));
        }
    }
    doc["tree"] = tree;
    json path = json::array();
    for (const auto& q : result.path) path.push_back(coords(q));
    doc["path"] = path;
    out << doc.dump() << "\n";
}

TreeDump read_trace(std::istream& in) {
    const json doc = json::parse(in);
    TreeDump dump;
    dump.r_star = doc.value("r_star", 0.0);
    const json& tree = doc.at("tree");
    for (const auto& n : tree.at("nodes")) dump.nodes.push_back(from_coords(n));
    for (const auto& p : tree.at("parents")) dump.parents.push_back(p.get<std::size_t>());
    for (const auto& t : tree.at("tags")) dump.tags.push_back(tag_from_name(t.get<std::string>()));
    for (const auto& q : doc.at("path")) dump.path.push_back(from_coords(q));
    require(dump.nodes.size() == dump.parents.size() && dump.nodes.size() == dump.tags.size(),
            "trace: tree arrays differ in length");
    return dump;
}

}  // namespace sisp
