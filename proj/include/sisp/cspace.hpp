#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sisp/types.hpp"

namespace sisp {

struct Bounds {
    Config lo;
    Config hi;

    [[nodiscard]] Eigen::Index dimension() const noexcept { return lo.size(); }
    [[nodiscard]] double diagonal() const { return (hi - lo).norm(); }
    [[nodiscard]] bool contains(const Config& q) const noexcept {
        return (q.array() >= lo.array()).all() && (q.array() <= hi.array()).all();
    }
};

// Obstacles are closed sets: a point on the surface is in collision.
struct Box {
    Config lo;
    Config hi;
};

struct Sphere {
    Config center;
    double radius = 0.0;
};

struct Capsule {
    Config a;
    Config b;
    double radius = 0.0;
};

using Obstacle = std::variant<Box, Sphere, Capsule>;

[[nodiscard]] bool obstacle_contains(const Obstacle& obstacle, const Config& q);

/// 2D occupancy grid. Cell (ix, iy) covers
/// [origin.x + ix*res, origin.x + (ix+1)*res) x [origin.y + iy*res, origin.y + (iy+1)*res).
/// Row 0 of the document is the top row (largest y), as the map reads on screen.
struct OccupancyGrid {
    int width = 0;
    int height = 0;
    double resolution = 1.0;
    Config origin;
    std::vector<std::uint8_t> occupied;  // row-major, iy * width + ix, iy = 0 at the bottom

    [[nodiscard]] bool cell_occupied(int ix, int iy) const {
        return occupied[static_cast<std::size_t>(iy) * static_cast<std::size_t>(width) +
                        static_cast<std::size_t>(ix)] != 0;
    }
    /// A point is free iff it falls in a free cell; points outside the grid are occupied.
    [[nodiscard]] bool point_free(const Config& q) const;
};

struct BallGoal {
    Config center;
    double tolerance = 0.0;
};

/// Goal reached once the configuration is at least `threshold` away from the start.
struct EscapeGoal {
    double threshold = 0.0;
};

using GoalSpec = std::variant<BallGoal, EscapeGoal>;

using World = std::variant<std::vector<Obstacle>, OccupancyGrid>;

/// Immutable after construction; shared read-only across planner runs.
struct Scene {
    std::string name;
    Bounds bounds;
    World world;
    Config start;
    GoalSpec goal;
    /// Absolute motion-check step; defaults to 0.5% of the bounds diagonal.
    std::optional<double> motion_resolution;

    [[nodiscard]] Eigen::Index dimension() const noexcept { return bounds.dimension(); }
    [[nodiscard]] double resolution() const;
};

class SceneError : public std::runtime_error {
public:
    enum class Kind { Parse, Semantic };
    SceneError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

[[nodiscard]] double distance(const Config& a, const Config& b);

[[nodiscard]] bool is_state_valid(const Scene& scene, const Config& q);

/// True iff every point of the segment [a, b], discretized at the scene's motion
/// resolution and including both endpoints, is valid. Symmetric in (a, b).
[[nodiscard]] bool check_motion(const Scene& scene, const Config& a, const Config& b);

[[nodiscard]] bool goal_satisfied(const Scene& scene, const Config& q);

/// Checks every structural and semantic invariant; throws SceneError(Semantic).
void validate_scene(const Scene& scene);

[[nodiscard]] Scene load_scene(std::string_view text);
[[nodiscard]] Scene load_scene_file(const std::string& path);
[[nodiscard]] std::string dump_scene(const Scene& scene);

}  // namespace sisp
