#include "sisp/cspace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace sisp {

using nlohmann::json;

namespace {

double point_segment_distance(const Config& q, const Config& a, const Config& b) {
    const Config ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (q - a).norm();
    const double t = std::clamp((q - a).dot(ab) / len2, 0.0, 1.0);
    return (q - (a + t * ab)).norm();
}

struct ContainsVisitor {
    const Config& q;
    bool operator()(const Box& box) const {
        return (q.array() >= box.lo.array()).all() && (q.array() <= box.hi.array()).all();
    }
    bool operator()(const Sphere& s) const { return (q - s.center).norm() <= s.radius; }
    bool operator()(const Capsule& c) const { return point_segment_distance(q, c.a, c.b) <= c.radius; }
};

void check_dimension(const Scene& scene, const Config& q) {
    if (q.size() == scene.dimension()) return;
    throw ContractError("configuration has dimension " + std::to_string(q.size()) + ", scene has " +
                        std::to_string(scene.dimension()));
}

}  // namespace

bool obstacle_contains(const Obstacle& obstacle, const Config& q) {
    return std::visit(ContainsVisitor{q}, obstacle);
}

bool OccupancyGrid::point_free(const Config& q) const {
    const double fx = std::floor((q[0] - origin[0]) / resolution);
    const double fy = std::floor((q[1] - origin[1]) / resolution);
    if (fx < 0 || fy < 0 || fx >= width || fy >= height) return false;
    return !cell_occupied(static_cast<int>(fx), static_cast<int>(fy));
}

double Scene::resolution() const {
    return motion_resolution.value_or(0.005 * bounds.diagonal());
}

double distance(const Config& a, const Config& b) {
    require(a.size() == b.size(), "distance: dimension mismatch");
    return (a - b).norm();
}

bool is_state_valid(const Scene& scene, const Config& q) {
    check_dimension(scene, q);
    if (!q.allFinite() || !scene.bounds.contains(q)) return false;
    if (const auto* grid = std::get_if<OccupancyGrid>(&scene.world)) return grid->point_free(q);
    const auto& obstacles = std::get<std::vector<Obstacle>>(scene.world);
    return std::none_of(obstacles.begin(), obstacles.end(),
                        [&](const Obstacle& o) { return obstacle_contains(o, q); });
}

bool check_motion(const Scene& scene, const Config& a, const Config& b) {
    check_dimension(scene, a);
    check_dimension(scene, b);
    // Canonical endpoint order makes the discretization, and hence the answer,
    // bit-identical under swapping a and b.
    const bool swap = std::lexicographical_compare(b.data(), b.data() + b.size(), a.data(),
                                                   a.data() + a.size());
    const Config& from = swap ? b : a;
    const Config& to = swap ? a : b;
    const Config delta = to - from;
    const double length = delta.norm();
    const auto steps = static_cast<long>(std::ceil(length / scene.resolution()));
    if (!is_state_valid(scene, from)) return false;
    if (steps == 0) return true;
    if (!is_state_valid(scene, to)) return false;
    Config q(from.size());
    for (long k = 1; k < steps; ++k) {
        q.noalias() = from + (static_cast<double>(k) / static_cast<double>(steps)) * delta;
        if (!is_state_valid(scene, q)) return false;
    }
    return true;
}

bool goal_satisfied(const Scene& scene, const Config& q) {
    check_dimension(scene, q);
    if (const auto* ball = std::get_if<BallGoal>(&scene.goal)) {
        return distance(q, ball->center) <= ball->tolerance;
    }
    return distance(q, scene.start) >= std::get<EscapeGoal>(scene.goal).threshold;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

[[noreturn]] void semantic(const std::string& what) {
    throw SceneError(SceneError::Kind::Semantic, what);
}

[[noreturn]] void parse_fail(const std::string& what) {
    throw SceneError(SceneError::Kind::Parse, what);
}

void expect_dim(const Config& q, Eigen::Index n, const std::string& field) {
    if (q.size() != n) {
        semantic(field + ": expected " + std::to_string(n) + " coordinates, got " +
                 std::to_string(q.size()));
    }
    if (!q.allFinite()) semantic(field + ": non-finite coordinate");
}

}  // namespace

void validate_scene(const Scene& scene) {
    const auto n = scene.dimension();
    if (n < 2) semantic("dimension must be at least 2");
    expect_dim(scene.bounds.hi, n, "bounds.hi");
    expect_dim(scene.bounds.lo, n, "bounds.lo");
    if (!(scene.bounds.lo.array() < scene.bounds.hi.array()).all()) {
        semantic("bounds: lo must be strictly below hi on every axis");
    }
    if (const auto* grid = std::get_if<OccupancyGrid>(&scene.world)) {
        if (n != 2) semantic("grid: occupancy grids are two-dimensional");
        if (grid->width <= 0 || grid->height <= 0) semantic("grid: width and height must be positive");
        if (!(grid->resolution > 0.0) || !std::isfinite(grid->resolution)) {
            semantic("grid: resolution must be positive");
        }
        expect_dim(grid->origin, 2, "grid.origin");
        if (grid->occupied.size() !=
            static_cast<std::size_t>(grid->width) * static_cast<std::size_t>(grid->height)) {
            semantic("grid: cell count does not match width*height");
        }
    } else {
        const auto& obstacles = std::get<std::vector<Obstacle>>(scene.world);
        for (std::size_t i = 0; i < obstacles.size(); ++i) {
            const std::string tag = "obstacles[" + std::to_string(i) + "]";
            std::visit(
                [&](const auto& o) {
                    using T = std::decay_t<decltype(o)>;
                    if constexpr (std::is_same_v<T, Box>) {
                        expect_dim(o.lo, n, tag + ".lo");
                        expect_dim(o.hi, n, tag + ".hi");
                        if (!(o.lo.array() < o.hi.array()).all()) semantic(tag + ": box lo must be below hi");
                    } else if constexpr (std::is_same_v<T, Sphere>) {
                        expect_dim(o.center, n, tag + ".center");
                        if (!(o.radius > 0.0)) semantic(tag + ": radius must be positive");
                    } else {
                        expect_dim(o.a, n, tag + ".a");
                        expect_dim(o.b, n, tag + ".b");
                        if (!(o.radius > 0.0)) semantic(tag + ": radius must be positive");
                    }
                },
                obstacles[i]);
        }
    }
    expect_dim(scene.start, n, "start");
    if (const auto* ball = std::get_if<BallGoal>(&scene.goal)) {
        expect_dim(ball->center, n, "goal.center");
        if (!(ball->tolerance > 0.0)) semantic("goal: tolerance must be positive");
    } else if (!(std::get<EscapeGoal>(scene.goal).threshold > 0.0)) {
        semantic("goal: threshold must be positive");
    }
    if (scene.motion_resolution && !(*scene.motion_resolution > 0.0)) {
        semantic("motion_resolution must be positive");
    }
    if (!is_state_valid(scene, scene.start)) semantic("start configuration is not valid");
}

// ---------------------------------------------------------------------------
// Scene document

namespace {

const json& field(const json& j, const char* key, const std::string& ctx) {
    if (!j.is_object()) parse_fail(ctx + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) parse_fail(ctx + ": missing field \"" + key + "\"");
    return *it;
}

double number(const json& j, const std::string& ctx) {
    if (!j.is_number()) parse_fail(ctx + ": expected a number");
    return j.get<double>();
}

Config vec(const json& j, const std::string& ctx) {
    if (!j.is_array()) parse_fail(ctx + ": expected an array of numbers");
    Config q(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        q[static_cast<Eigen::Index>(i)] = number(j[i], ctx + "[" + std::to_string(i) + "]");
    }
    return q;
}

json to_json(const Config& q) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < q.size(); ++i) arr.push_back(q[i]);
    return arr;
}

Obstacle parse_obstacle(const json& j, const std::string& ctx) {
    const json& kind = field(j, "kind", ctx);
    if (!kind.is_string()) parse_fail(ctx + ".kind: expected a string");
    const auto k = kind.get<std::string>();
    if (k == "box") return Box{vec(field(j, "lo", ctx), ctx + ".lo"), vec(field(j, "hi", ctx), ctx + ".hi")};
    if (k == "sphere") {
        return Sphere{vec(field(j, "center", ctx), ctx + ".center"),
                      number(field(j, "radius", ctx), ctx + ".radius")};
    }
    if (k == "capsule") {
        return Capsule{vec(field(j, "a", ctx), ctx + ".a"), vec(field(j, "b", ctx), ctx + ".b"),
                       number(field(j, "radius", ctx), ctx + ".radius")};
    }
    semantic(ctx + ": unknown obstacle kind \"" + k + "\"");
}

OccupancyGrid parse_grid(const json& j) {
    OccupancyGrid grid;
    const json& w = field(j, "width", "grid");
    const json& h = field(j, "height", "grid");
    if (!w.is_number_integer() || !h.is_number_integer()) parse_fail("grid: width/height must be integers");
    grid.width = w.get<int>();
    grid.height = h.get<int>();
    grid.resolution = number(field(j, "resolution", "grid"), "grid.resolution");
    grid.origin = vec(field(j, "origin", "grid"), "grid.origin");
    const json& rows = field(j, "rows", "grid");
    if (!rows.is_array()) parse_fail("grid.rows: expected an array of strings");
    if (grid.width <= 0 || grid.height <= 0) semantic("grid: width and height must be positive");
    if (rows.size() != static_cast<std::size_t>(grid.height)) semantic("grid.rows: expected `height` rows");
    grid.occupied.assign(static_cast<std::size_t>(grid.width) * static_cast<std::size_t>(grid.height), 0);
    for (int r = 0; r < grid.height; ++r) {
        const json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_string()) parse_fail("grid.rows: expected strings");
        const auto s = row.get<std::string>();
        if (s.size() != static_cast<std::size_t>(grid.width)) {
            semantic("grid.rows[" + std::to_string(r) + "]: expected `width` characters");
        }
        const int iy = grid.height - 1 - r;
        for (int ix = 0; ix < grid.width; ++ix) {
            const char c = s[static_cast<std::size_t>(ix)];
            if (c != '#' && c != '.') semantic("grid.rows: cells must be '#' or '.'");
            grid.occupied[static_cast<std::size_t>(iy) * static_cast<std::size_t>(grid.width) +
                          static_cast<std::size_t>(ix)] = c == '#' ? 1 : 0;
        }
    }
    return grid;
}

std::string line_context(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n');
    const auto begin = text.rfind('\n', byte == 0 ? 0 : byte - 1);
    const auto col = byte - (begin == std::string_view::npos ? 0 : begin + 1);
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Scene load_scene(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        parse_fail("scene document, " + line_context(text, e.byte) + ": " + e.what());
    }
    Scene scene;
    const json& name = field(doc, "name", "scene");
    if (!name.is_string()) parse_fail("name: expected a string");
    scene.name = name.get<std::string>();
    const json& dim = field(doc, "dimension", "scene");
    if (!dim.is_number_integer()) parse_fail("dimension: expected an integer");
    const json& bounds = field(doc, "bounds", "scene");
    scene.bounds = {vec(field(bounds, "lo", "bounds"), "bounds.lo"), vec(field(bounds, "hi", "bounds"), "bounds.hi")};
    if (scene.bounds.lo.size() != dim.get<long>()) semantic("bounds.lo: size differs from dimension");

    const bool has_obstacles = doc.contains("obstacles");
    const bool has_grid = doc.contains("grid");
    if (has_obstacles == has_grid) parse_fail("scene: exactly one of \"obstacles\" or \"grid\" is required");
    if (has_obstacles) {
        const json& list = doc["obstacles"];
        if (!list.is_array()) parse_fail("obstacles: expected an array");
        std::vector<Obstacle> obstacles;
        for (std::size_t i = 0; i < list.size(); ++i) {
            obstacles.push_back(parse_obstacle(list[i], "obstacles[" + std::to_string(i) + "]"));
        }
        scene.world = std::move(obstacles);
    } else {
        scene.world = parse_grid(doc["grid"]);
    }

    scene.start = vec(field(doc, "start", "scene"), "start");
    const json& goal = field(doc, "goal", "scene");
    const json& kind = field(goal, "kind", "goal");
    if (!kind.is_string()) parse_fail("goal.kind: expected a string");
    if (kind == "ball") {
        scene.goal = BallGoal{vec(field(goal, "center", "goal"), "goal.center"),
                              number(field(goal, "tolerance", "goal"), "goal.tolerance")};
    } else if (kind == "escape") {
        scene.goal = EscapeGoal{number(field(goal, "threshold", "goal"), "goal.threshold")};
    } else {
        semantic("goal: unknown kind \"" + kind.get<std::string>() + "\"");
    }
    if (auto it = doc.find("motion_resolution"); it != doc.end()) {
        scene.motion_resolution = number(*it, "motion_resolution");
    }
    validate_scene(scene);
    return scene;
}

Scene load_scene_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SceneError(SceneError::Kind::Parse, "cannot open scene file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return load_scene(buf.str());
    } catch (const SceneError& e) {
        throw SceneError(e.kind(), path + ": " + e.what());
    }
}

std::string dump_scene(const Scene& scene) {
    json doc;
    doc["name"] = scene.name;
    doc["dimension"] = scene.dimension();
    doc["bounds"] = {{"lo", to_json(scene.bounds.lo)}, {"hi", to_json(scene.bounds.hi)}};
    if (const auto* grid = std::get_if<OccupancyGrid>(&scene.world)) {
        json rows = json::array();
        for (int iy = grid->height - 1; iy >= 0; --iy) {
            std::string row;
            for (int ix = 0; ix < grid->width; ++ix) row += grid->cell_occupied(ix, iy) ? '#' : '.';
            rows.push_back(row);
        }
        doc["grid"] = {{"width", grid->width},           {"height", grid->height},
                       {"resolution", grid->resolution}, {"origin", to_json(grid->origin)},
                       {"rows", rows}};
    } else {
        json list = json::array();
        for (const auto& o : std::get<std::vector<Obstacle>>(scene.world)) {
            std::visit(
                [&](const auto& ob) {
                    using T = std::decay_t<decltype(ob)>;
                    if constexpr (std::is_same_v<T, Box>) {
                        list.push_back({{"kind", "box"}, {"lo", to_json(ob.lo)}, {"hi", to_json(ob.hi)}});
                    } else if constexpr (std::is_same_v<T, Sphere>) {
                        list.push_back({{"kind", "sphere"}, {"center", to_json(ob.center)}, {"radius", ob.radius}});
                    } else {
                        list.push_back({{"kind", "capsule"},
                                        {"a", to_json(ob.a)},
                                        {"b", to_json(ob.b)},
                                        {"radius", ob.radius}});
                    }
                },
                o);
        }
        doc["obstacles"] = list;
    }
    doc["start"] = to_json(scene.start);
    if (const auto* ball = std::get_if<BallGoal>(&scene.goal)) {
        doc["goal"] = {{"kind", "ball"}, {"center", to_json(ball->center)}, {"tolerance", ball->tolerance}};
    } else {
        doc["goal"] = {{"kind", "escape"}, {"threshold", std::get<EscapeGoal>(scene.goal).threshold}};
    }
    if (scene.motion_resolution) doc["motion_resolution"] = *scene.motion_resolution;
    return doc.dump(2) + "\n";
}

}  // namespace sisp
