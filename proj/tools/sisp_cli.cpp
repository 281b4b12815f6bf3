// Command-line front end: single plans, benchmark campaigns, scale-search
// traces, success-curve plots and tunnel scene generation.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sisp/bench.hpp"
#include "sisp/cspace.hpp"
#include "sisp/planners.hpp"
#include "sisp/scale_search.hpp"

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kSceneError = 2, kInternal = 3 };

std::string format_config(const sisp::Config& q) {
    std::string s;
    char buf[32];
    for (Eigen::Index i = 0; i < q.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.17g", i == 0 ? "" : " ", q[i]);
        s += buf;
    }
    return s;
}

int cmd_plan(const std::string& scene_path, const std::string& planner, std::uint64_t seed, double timeout,
             const std::string& trace_path, const std::string& svg_path) {
    if (!sisp::is_planner_name(planner)) {
        std::cerr << "unknown planner: " << planner << "\n";
        return kUsage;
    }
    const sisp::Scene scene = sisp::load_scene_file(scene_path);
    sisp::PlannerParams params;
    params.timeout_s = timeout;
    params.record_trace = !trace_path.empty() || !svg_path.empty();
    sisp::RngStream rng(seed);
    const auto result = sisp::run_planner(planner, scene, params, rng);

    std::cout << "scene " << scene.name << "\nplanner " << planner << "\nseed " << seed << "\noutcome "
              << sisp::outcome_name(result.outcome) << "\niterations " << result.stats.iterations << "\ntree_size "
              << result.stats.tree_size << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", result.stats.r_star);
    std::cout << "r_star " << buf << "\n";
    if (result.solved()) {
        std::snprintf(buf, sizeof buf, "%.17g", sisp::path_length(result.path));
        std::cout << "path_length " << buf << "\npath " << result.path.size() << "\n";
        for (const auto& q : result.path) std::cout << format_config(q) << "\n";
    }
    for (const auto& d : result.stats.diagnostics) std::cerr << "note: " << d << "\n";
    std::cerr << "wall_time_s " << result.stats.wall_time_s << "\n";

    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) throw std::runtime_error("cannot write " + trace_path);
        sisp::write_trace(out, scene, planner, seed, result);
    }
    if (!svg_path.empty()) {
        std::stringstream buffer;
        sisp::write_trace(buffer, scene, planner, seed, result);
        sisp::emit_tree_svg(scene, sisp::read_trace(buffer), svg_path);
    }
    return kOk;
}

void print_summary(const std::vector<sisp::BenchRecord>& records) {
    std::map<std::pair<std::string, std::string>, std::vector<const sisp::BenchRecord*>> groups;
    for (const auto& r : records) groups[{r.scene, r.planner}].push_back(&r);
    std::printf("%-28s %-14s %8s %14s\n", "scene", "planner", "solved", "median_time_s");
    for (const auto& [key, group] : groups) {
        std::vector<double> times;
        for (const auto* r : group)
            if (r->outcome == "solved") times.push_back(r->wall_time_s);
        std::sort(times.begin(), times.end());
        char solved[32];
        std::snprintf(solved, sizeof solved, "%zu/%zu", times.size(), group.size());
        if (times.empty()) {
            std::printf("%-28s %-14s %8s %14s\n", key.first.c_str(), key.second.c_str(), solved, "-");
        } else {
            std::printf("%-28s %-14s %8s %14.4f\n", key.first.c_str(), key.second.c_str(), solved,
                        times[times.size() / 2]);
        }
    }
}

int cmd_bench(const std::string& config_path, int runs, double timeout, const std::string& out_dir, unsigned jobs) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "cannot open config " << config_path << "\n";
        return kUsage;
    }
    std::stringstream text;
    text << in.rdbuf();
    auto cfg = sisp::parse_bench_config(text.str(), std::filesystem::path(config_path).parent_path().string());
    if (runs > 0) cfg.runs = runs;
    if (timeout > 0.0) cfg.timeout_s = timeout;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (cfg.out_dir.empty()) cfg.out_dir = "bench-results";
    if (jobs > 0) cfg.jobs = jobs;

    const auto records = sisp::run_benchmark(cfg);
    sisp::emit_success_curve(records, (std::filesystem::path(cfg.out_dir) / "success_curve.svg").string());
    print_summary(records);
    std::cout << "wrote " << (std::filesystem::path(cfg.out_dir) / "results.csv").string() << "\n";
    return kOk;
}

int cmd_scale_trace(const std::string& scene_path, std::uint64_t seed, const std::string& out_path, double r0) {
    const sisp::Scene scene = sisp::load_scene_file(scene_path);
    sisp::ScaleParams params;
    if (r0 > 0.0) params.r0 = r0;
    sisp::RngStream rng(seed);
    const auto result = sisp::find_entropy_scale(scene, scene.start, params, rng);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    sisp::write_scale_history_csv(out, result);
    std::printf("r_star %.17g\nconverged %s\nsteps %zu\nvalid_samples %zu\n", result.r_star,
                result.converged ? "true" : "false", result.history.size(), result.valid_samples.size());
    return kOk;
}

int cmd_plot(const std::string& in_path, const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) {
        std::cerr << "cannot open " << in_path << "\n";
        return kUsage;
    }
    const auto records = sisp::read_records_csv(in);
    if (records.empty()) {
        std::cerr << "no records in " << in_path << "\n";
        return kUsage;
    }
    sisp::emit_success_curve(records, out_path);
    return kOk;
}

int cmd_gen_tunnel(double gap, double length, double half_extent, const std::string& out_path) {
    const auto scene = sisp::generate_tunnel_scene(gap, length, half_extent);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << sisp::dump_scene(scene);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scale-invariant sampling planners and benchmark harness"};
    app.require_subcommand(1);

    std::string scene_path, planner = "mab-rrt", trace_path, svg_path, out_path, in_path, config_path, out_dir;
    std::uint64_t seed = 0;
    double timeout = 10.0;

    auto* plan = app.add_subcommand("plan", "Run one planner on one scene");
    plan->add_option("--scene", scene_path, "Scene document (JSON)")->required();
    plan->add_option("--planner", planner, "mab-rrt | rrt-uniform | rrt-gaussian | rrt-bridge | rrt-obstacle");
    plan->add_option("--seed", seed, "RNG seed");
    plan->add_option("--timeout", timeout, "Wall-clock budget in seconds")->check(CLI::PositiveNumber);
    plan->add_option("--trace", trace_path, "Write the per-iteration trace and tree dump (JSON)");
    plan->add_option("--svg", svg_path, "Render the tree (2D scenes only)");

    int runs = 0;
    double bench_timeout = 0.0;
    unsigned jobs = 0;
    auto* bench = app.add_subcommand("bench", "Run a multi-seed benchmark campaign");
    bench->add_option("--config", config_path, "Bench config (JSON)")->required();
    bench->add_option("--runs", runs, "Override runs per (scene, planner)");
    bench->add_option("--timeout", bench_timeout, "Override per-run timeout in seconds");
    bench->add_option("--out", out_dir, "Output directory");
    bench->add_option("--jobs", jobs, "Worker threads (default: all cores)");

    double r0 = 0.0;
    auto* scale = app.add_subcommand("scale-trace", "Write the grow-shrink radius history as CSV");
    scale->add_option("--scene", scene_path, "Scene document (JSON)")->required();
    scale->add_option("--seed", seed, "RNG seed");
    scale->add_option("--out", out_path, "CSV output")->required();
    scale->add_option("--r0", r0, "Initial radius (default 1.0)");

    auto* plot = app.add_subcommand("plot", "Success rate over time from a results CSV");
    plot->add_option("--in", in_path, "results.csv")->required();
    plot->add_option("--out", out_path, "SVG output (a .csv with the curve points is written alongside)")->required();

    double gap = 5.0, length = 30.0, half_extent = 50.0;
    auto* gen = app.add_subcommand("gen-tunnel", "Write a tunnel scene document");
    gen->add_option("--gap", gap, "Corridor width");
    gen->add_option("--length", length, "Corridor length");
    gen->add_option("--half-extent", half_extent, "Bounds are [-H, H]^2");
    gen->add_option("--out", out_path, "Scene output (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*plan) return cmd_plan(scene_path, planner, seed, timeout, trace_path, svg_path);
        if (*bench) return cmd_bench(config_path, runs, bench_timeout, out_dir, jobs);
        if (*scale) return cmd_scale_trace(scene_path, seed, out_path, r0);
        if (*plot) return cmd_plot(in_path, out_path);
        if (*gen) return cmd_gen_tunnel(gap, length, half_extent, out_path);
    } catch (const sisp::SceneError& e) {
        std::cerr << "scene error: " << e.what() << "\n";
        return kSceneError;
    } catch (const sisp::ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
