#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sisp/cspace.hpp"
#include "sisp/planners.hpp"

namespace sisp {

/// Wall thickness of generated tunnel bars.
inline constexpr double kTunnelWallThickness = 10.0;

/// 2D tunnel in [-H, H]^2: two bars at y = +/- gap/2 run from the left bound
/// (x = -H) to the mouth at x = -H + length, so the corridor's inner end is
/// closed by the workspace boundary. The start sits gap/2 from the inner end on
/// the centre line; the ball goal lies on the centre line halfway between the
/// mouth and the right bound, with tolerance 0.05 H.
[[nodiscard]] Scene generate_tunnel_scene(double gap, double length, double bounds_half_extent);

struct TunnelSpec {
    double gap = 5.0;
    double length = 30.0;
    double half_extent = 50.0;
};

using SceneSource = std::variant<std::string, TunnelSpec>;

struct BenchConfig {
    std::vector<SceneSource> scenes;
    std::vector<std::string> planners;
    int runs = 20;
    double timeout_s = 10.0;
    std::uint64_t base_seed = 0;
    std::string out_dir;
    unsigned jobs = 0;  // 0: hardware concurrency

    void validate() const;
};

/// Parses a bench config document:
/// {"scenes": ["file.json", {"generator": "tunnel", "gap": 5, "length": 30, "half_extent": 50}],
///  "planners": ["mab-rrt", "rrt-uniform"], "runs": 20, "timeout": 10, "seed": 0, "out": "results"}
/// Relative scene paths resolve against `base_dir`.
[[nodiscard]] BenchConfig parse_bench_config(const std::string& text, const std::string& base_dir = "");

[[nodiscard]] Scene resolve_scene(const SceneSource& source);

struct BenchRecord {
    std::string scene;
    std::string planner;
    std::uint64_t seed = 0;
    std::string outcome;  // solved | timeout | exhausted | error
    double wall_time_s = 0.0;
    long iterations = 0;
    std::optional<double> path_length;
    std::size_t tree_size = 0;
    double r_star = 0.0;

    bool operator==(const BenchRecord&) const = default;
};

inline constexpr const char* kResultsHeader = "scene,planner,seed,outcome,wall_time_s,iterations,path_length,tree_size,r_star";

[[nodiscard]] BenchRecord make_record(const std::string& scene, const std::string& planner, std::uint64_t seed,
                                      const PlannerResult& result);

/// Runs every (scene, planner, run) triple with seed = base_seed + run. Runs
/// fan out over `jobs` threads; the returned records are sorted by
/// (scene, planner, seed). When `out_dir` is set, `results.csv` is appended to
/// as runs finish and rewritten sorted at the end. `params` supplies everything
/// but the timeout, which comes from the config.
[[nodiscard]] std::vector<BenchRecord> run_benchmark(const BenchConfig& config, const PlannerParams& params = {});

void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records);
[[nodiscard]] std::vector<BenchRecord> read_records_csv(std::istream& in);

struct CurvePoint {
    double time_s;
    double success_rate;
};

struct SuccessCurve {
    std::string scene;
    std::string planner;
    std::size_t runs = 0;
    std::vector<CurvePoint> points;  // step function, starts at (0, 0)
};

[[nodiscard]] std::vector<SuccessCurve> success_curves(const std::vector<BenchRecord>& records);

/// Writes `<out>` as an SVG plot with a log-scale time axis and `<out>.csv`
/// (stem + ".csv") with `scene,planner,time_s,success_rate` rows.
void emit_success_curve(const std::vector<BenchRecord>& records, const std::string& out_svg);

[[nodiscard]] std::string success_curve_svg(const std::vector<SuccessCurve>& curves);

/// SVG of a 2D scene with the planning tree coloured by producing sampler and
/// a circle at r*. Throws ContractError for non-2D scenes.
[[nodiscard]] std::string tree_svg(const Scene& scene, const TreeDump& dump);
void emit_tree_svg(const Scene& scene, const TreeDump& dump, const std::string& out_path);

/// Edge colour per node tag.
[[nodiscard]] std::string_view tag_color(NodeTag tag) noexcept;

}  // namespace sisp
