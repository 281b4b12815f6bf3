#include "sisp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "sisp/svg.hpp"

namespace sisp {

namespace fs = std::filesystem;

Scene generate_tunnel_scene(double gap, double length, double bounds_half_extent) {
    const double h = bounds_half_extent;
    require(std::isfinite(gap) && std::isfinite(length) && std::isfinite(h) && h > 0.0,
            "tunnel: parameters must be finite and the half extent positive");
    require(gap > 0.0 && gap < 2.0 * h, "tunnel: need 0 < gap < 2 * half_extent");
    require(length > 0.0, "tunnel: length must be positive");
    const double w = 0.5 * gap;
    const double tol = 0.05 * h;
    const double mouth = -h + length;
    require(mouth + 2.0 * tol < h, "tunnel: corridor leaves no room for the goal inside the bounds");
    require(w < length, "tunnel: start would sit outside the corridor");
    const double wall = std::min(kTunnelWallThickness, h - w);
    require(wall > 0.0, "tunnel: no room for the walls");

    Scene scene;
    char name[96];
    std::snprintf(name, sizeof name, "tunnel-gap%g-len%g", gap, length);
    scene.name = name;
    scene.bounds = {Eigen::Vector2d(-h, -h), Eigen::Vector2d(h, h)};
    scene.world = std::vector<Obstacle>{
        Box{Eigen::Vector2d(-h, w), Eigen::Vector2d(mouth, w + wall)},
        Box{Eigen::Vector2d(-h, -w - wall), Eigen::Vector2d(mouth, -w)},
    };
    scene.start = Eigen::Vector2d(-h + w, 0.0);
    scene.goal = BallGoal{Eigen::Vector2d(0.5 * (mouth + h), 0.0), tol};
    validate_scene(scene);
    return scene;
}

void BenchConfig::validate() const {
    require(!scenes.empty(), "bench: no scenes");
    require(!planners.empty(), "bench: no planners");
    for (const auto& p : planners) require(is_planner_name(p), "bench: unknown planner \"" + p + "\"");
    require(runs >= 1, "bench: runs must be at least 1");
    require(timeout_s > 0.0, "bench: timeout must be positive");
}

BenchConfig parse_bench_config(const std::string& text, const std::string& base_dir) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ContractError(std::string("bench config: ") + e.what());
    }
    BenchConfig cfg;
    try {
        for (const auto& s : doc.at("scenes")) {
            if (s.is_string()) {
                fs::path p = s.get<std::string>();
                if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
                cfg.scenes.emplace_back(p.string());
            } else {
                require(s.value("generator", std::string()) == "tunnel", "bench config: unknown scene generator");
                cfg.scenes.emplace_back(TunnelSpec{s.at("gap").get<double>(), s.value("length", 30.0),
                                                   s.value("half_extent", 50.0)});
            }
        }
        cfg.planners = doc.at("planners").get<std::vector<std::string>>();
        cfg.runs = doc.value("runs", cfg.runs);
        cfg.timeout_s = doc.value("timeout", cfg.timeout_s);
        cfg.base_seed = doc.value("seed", cfg.base_seed);
        cfg.out_dir = doc.value("out", cfg.out_dir);
        cfg.jobs = doc.value("jobs", cfg.jobs);
    } catch (const json::exception& e) {
        throw ContractError(std::string("bench config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

Scene resolve_scene(const SceneSource& source) {
    if (const auto* path = std::get_if<std::string>(&source)) return load_scene_file(*path);
    const auto& t = std::get<TunnelSpec>(source);
    return generate_tunnel_scene(t.gap, t.length, t.half_extent);
}

BenchRecord make_record(const std::string& scene, const std::string& planner, std::uint64_t seed,
                        const PlannerResult& result) {
    BenchRecord r;
    r.scene = scene;
    r.planner = planner;
    r.seed = seed;
    r.outcome = std::string(outcome_name(result.outcome));
    r.wall_time_s = result.stats.wall_time_s;
    r.iterations = result.stats.iterations;
    if (result.solved()) r.path_length = path_length(result.path);
    r.tree_size = result.stats.tree_size;
    r.r_star = result.stats.r_star;
    return r;
}

namespace {

std::string format_record(const BenchRecord& r) {
    char buf[512];
    std::string length = r.path_length ? std::string(buf, static_cast<std::size_t>(std::snprintf(
                                                              buf, sizeof buf, "%.17g", *r.path_length)))
                                       : std::string();
    std::snprintf(buf, sizeof buf, "%s,%s,%llu,%s,%.6f,%ld,%s,%zu,%.17g\n", r.scene.c_str(), r.planner.c_str(),
                  static_cast<unsigned long long>(r.seed), r.outcome.c_str(), r.wall_time_s, r.iterations,
                  length.c_str(), r.tree_size, r.r_star);
    return buf;
}

bool record_less(const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.scene, a.planner, a.seed) < std::tie(b.scene, b.planner, b.seed);
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << kResultsHeader << "\n";
    for (const auto& r : records) out << format_record(r);
}

std::vector<BenchRecord> read_records_csv(std::istream& in) {
    std::string line;
    require(static_cast<bool>(std::getline(in, line)) && line == kResultsHeader, "results CSV: unexpected header");
    std::vector<BenchRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        require(f.size() == 9, "results CSV: expected 9 columns in \"" + line + "\"");
        BenchRecord r;
        r.scene = f[0];
        r.planner = f[1];
        r.seed = std::stoull(f[2]);
        r.outcome = f[3];
        r.wall_time_s = std::stod(f[4]);
        r.iterations = std::stol(f[5]);
        if (!f[6].empty()) r.path_length = std::stod(f[6]);
        r.tree_size = std::stoull(f[7]);
        r.r_star = std::stod(f[8]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<BenchRecord> run_benchmark(const BenchConfig& config, const PlannerParams& base_params) {
    config.validate();
    std::vector<Scene> scenes;
    scenes.reserve(config.scenes.size());
    for (const auto& src : config.scenes) scenes.push_back(resolve_scene(src));

    struct Job {
        std::size_t scene;
        std::size_t planner;
        int run;
    };
    std::vector<Job> jobs;
    for (std::size_t s = 0; s < scenes.size(); ++s)
        for (std::size_t p = 0; p < config.planners.size(); ++p)
            for (int r = 0; r < config.runs; ++r) jobs.push_back({s, p, r});

    PlannerParams params = base_params;
    params.timeout_s = config.timeout_s;
    params.record_trace = false;

    std::ofstream incremental;
    if (!config.out_dir.empty()) {
        fs::create_directories(config.out_dir);
        incremental.open(fs::path(config.out_dir) / "results.csv");
        incremental << kResultsHeader << "\n" << std::flush;
    }

    std::vector<BenchRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex io;
    const auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const Job& job = jobs[i];
            const Scene& scene = scenes[job.scene];
            const std::string& planner = config.planners[job.planner];
            const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(job.run);
            BenchRecord rec;
            try {
                RngStream rng(seed);
                rec = make_record(scene.name, planner, seed, run_planner(planner, scene, params, rng));
            } catch (const std::exception&) {
                rec = BenchRecord{scene.name, planner, seed, "error", 0.0, 0, std::nullopt, 0, 0.0};
            }
            records[i] = rec;
            if (incremental.is_open()) {
                const std::lock_guard lock(io);
                incremental << format_record(rec) << std::flush;
            }
        }
    };

    unsigned threads = config.jobs != 0 ? config.jobs : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    std::sort(records.begin(), records.end(), record_less);
    if (incremental.is_open()) {
        incremental.close();
        std::ofstream out(fs::path(config.out_dir) / "results.csv");
        write_records_csv(out, records);
    }
    return records;
}

std::vector<SuccessCurve> success_curves(const std::vector<BenchRecord>& records) {
    std::map<std::pair<std::string, std::string>, std::vector<const BenchRecord*>> groups;
    for (const auto& r : records) groups[{r.scene, r.planner}].push_back(&r);
    std::vector<SuccessCurve> curves;
    for (const auto& [key, group] : groups) {
        SuccessCurve c{key.first, key.second, group.size(), {{0.0, 0.0}}};
        std::vector<double> times;
        for (const auto* r : group)
            if (r->outcome == "solved") times.push_back(r->wall_time_s);
        std::sort(times.begin(), times.end());
        const double n = static_cast<double>(group.size());
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double rate = static_cast<double>(k + 1) / n;
            if (c.points.back().time_s == times[k]) {
                c.points.back().success_rate = rate;
            } else {
                c.points.push_back({times[k], rate});
            }
        }
        curves.push_back(std::move(c));
    }
    return curves;
}

std::string success_curve_svg(const std::vector<SuccessCurve>& curves) {
    constexpr double kW = 720, kH = 420, kLeft = 70, kRight = 200, kTop = 30, kBottom = 50;
    constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#2ca02c", "#d62728", "#ff7f0e",
                                                  "#9467bd", "#8c564b", "#e377c2", "#17becf"};
    double t_lo = std::numeric_limits<double>::infinity();
    double t_hi = 0.0;
    for (const auto& c : curves) {
        for (const auto& p : c.points) {
            if (p.time_s > 0.0) {
                t_lo = std::min(t_lo, p.time_s);
                t_hi = std::max(t_hi, p.time_s);
            }
        }
    }
    if (!std::isfinite(t_lo)) {
        t_lo = 1e-3;
        t_hi = 1.0;
    }
    const double lo = std::floor(std::log10(t_lo));
    const double hi = std::max(lo + 1.0, std::ceil(std::log10(t_hi) + 1e-9));
    const double pw = kW - kLeft - kRight;
    const double ph = kH - kTop - kBottom;
    const auto px = [&](double t) { return kLeft + (std::log10(t) - lo) / (hi - lo) * pw; };
    const auto py = [&](double rate) { return kTop + (1.0 - rate) * ph; };
    const double t_end = std::pow(10.0, hi);

    SvgWriter svg(kW, kH);
    svg.rect(0, 0, kW, kH, "white");
    svg.rect(kLeft, kTop, pw, ph, "none", "black");
    for (double d = lo; d <= hi + 1e-9; d += 1.0) {
        const double x = px(std::pow(10.0, d));
        svg.line(x, kTop, x, kTop + ph, "#dddddd");
        char label[32];
        std::snprintf(label, sizeof label, "1e%d", static_cast<int>(d));
        svg.text(x, kTop + ph + 18, label, 11, "middle");
    }
    for (int k = 0; k <= 4; ++k) {
        const double rate = k / 4.0;
        svg.line(kLeft, py(rate), kLeft + pw, py(rate), "#dddddd");
        svg.text(kLeft - 8, py(rate) + 4, std::to_string(k * 25) + "%", 11, "end");
    }
    svg.text(kLeft + pw / 2, kH - 10, "time [s] (log scale)", 12, "middle");
    svg.text(14, kTop + ph / 2, "success", 12, "start");

    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto& c = curves[i];
        const char* color = kPalette[i % kPalette.size()];
        std::string pts;
        double rate = 0.0;
        pts += fmt_num(px(std::pow(10.0, lo))) + "," + fmt_num(py(0.0));
        for (const auto& p : c.points) {
            if (p.time_s <= 0.0) continue;
            pts += " " + fmt_num(px(p.time_s)) + "," + fmt_num(py(rate));
            rate = p.success_rate;
            pts += " " + fmt_num(px(p.time_s)) + "," + fmt_num(py(rate));
        }
        pts += " " + fmt_num(px(t_end)) + "," + fmt_num(py(rate));
        svg.polyline(pts, color, 2.0);
        const double ly = kTop + 14.0 + 18.0 * static_cast<double>(i);
        svg.line(kW - kRight + 10, ly - 4, kW - kRight + 30, ly - 4, color, 2.0);
        svg.text(kW - kRight + 36, ly, c.scene + " / " + c.planner, 10);
    }
    return svg.str();
}

void emit_success_curve(const std::vector<BenchRecord>& records, const std::string& out_svg) {
    const auto curves = success_curves(records);
    {
        std::ofstream out(out_svg);
        require(static_cast<bool>(out), "cannot write " + out_svg);
        out << success_curve_svg(curves);
    }
    fs::path csv_path = out_svg;
    csv_path.replace_extension(".csv");
    std::ofstream csv(csv_path);
    require(static_cast<bool>(csv), "cannot write " + csv_path.string());
    csv << "scene,planner,time_s,success_rate\n";
    char buf[64];
    for (const auto& c : curves) {
        for (const auto& p : c.points) {
            std::snprintf(buf, sizeof buf, "%.6f,%.6f\n", p.time_s, p.success_rate);
            csv << c.scene << "," << c.planner << "," << buf;
        }
    }
}

std::string_view tag_color(NodeTag tag) noexcept {
    switch (tag) {
        case NodeTag::Root: return "#000000";
        case NodeTag::BurnIn: return "#7fd97f";
        case NodeTag::Uniform: return "#1f4fd6";
        case NodeTag::PCPositive: return "#1a8a1a";
        case NodeTag::PCNegative: return "#d61fd6";
        case NodeTag::Gaussian: return "#ff7f0e";
        case NodeTag::Bridge: return "#8c564b";
        case NodeTag::Obstacle: return "#17becf";
    }
    return "#000000";
}

std::string tree_svg(const Scene& scene, const TreeDump& dump) {
    require(scene.dimension() == 2, "tree SVG: only 2D scenes can be rendered");
    const Bounds& b = scene.bounds;
    const double extent = std::max(b.hi[0] - b.lo[0], b.hi[1] - b.lo[1]);
    const double scale = 800.0 / extent;
    const double width = (b.hi[0] - b.lo[0]) * scale;
    const double height = (b.hi[1] - b.lo[1]) * scale;
    const auto sx = [&](double x) { return (x - b.lo[0]) * scale; };
    const auto sy = [&](double y) { return (b.hi[1] - y) * scale; };

    SvgWriter svg(width, height);
    svg.rect(0, 0, width, height, "white", "black");
    if (const auto* grid = std::get_if<OccupancyGrid>(&scene.world)) {
        for (int iy = 0; iy < grid->height; ++iy) {
            for (int ix = 0; ix < grid->width; ++ix) {
                if (!grid->cell_occupied(ix, iy)) continue;
                const double x0 = grid->origin[0] + ix * grid->resolution;
                const double y1 = grid->origin[1] + (iy + 1) * grid->resolution;
                svg.rect(sx(x0), sy(y1), grid->resolution * scale, grid->resolution * scale, "#333333");
            }
        }
    } else {
        for (const auto& o : std::get<std::vector<Obstacle>>(scene.world)) {
            std::visit(
                [&](const auto& ob) {
                    using T = std::decay_t<decltype(ob)>;
                    if constexpr (std::is_same_v<T, Box>) {
                        svg.rect(sx(ob.lo[0]), sy(ob.hi[1]), (ob.hi[0] - ob.lo[0]) * scale,
                                 (ob.hi[1] - ob.lo[1]) * scale, "#333333");
                    } else if constexpr (std::is_same_v<T, Sphere>) {
                        svg.circle(sx(ob.center[0]), sy(ob.center[1]), ob.radius * scale, "#333333");
                    } else {
                        svg.raw("<line x1=\"" + fmt_num(sx(ob.a[0])) + "\" y1=\"" + fmt_num(sy(ob.a[1])) +
                                "\" x2=\"" + fmt_num(sx(ob.b[0])) + "\" y2=\"" + fmt_num(sy(ob.b[1])) +
                                "\" stroke=\"#333333\" stroke-linecap=\"round\" stroke-width=\"" +
                                fmt_num(2.0 * ob.radius * scale) + "\"/>");
                    }
                },
                o);
        }
    }

    for (std::size_t i = 1; i < dump.nodes.size(); ++i) {
        const Config& a = dump.nodes[dump.parents[i]];
        const Config& c = dump.nodes[i];
        const auto tag = dump.tags[i];
        svg.line(sx(a[0]), sy(a[1]), sx(c[0]), sy(c[1]), tag_color(tag), 1.0,
                 std::string("edge ") + std::string(tag_name(tag)));
    }
    for (std::size_t i = 1; i < dump.path.size(); ++i) {
        svg.line(sx(dump.path[i - 1][0]), sy(dump.path[i - 1][1]), sx(dump.path[i][0]), sy(dump.path[i][1]),
                 "#ff0000", 2.5, "path");
    }
    if (dump.r_star > 0.0) {
        svg.circle(sx(scene.start[0]), sy(scene.start[1]), dump.r_star * scale, "none", "#ff8c00", 2.0, "r-star");
    }
    svg.rect(sx(scene.start[0]) - 5, sy(scene.start[1]) - 5, 10, 10, "#66dd66", "black");
    if (const auto* ball = std::get_if<BallGoal>(&scene.goal)) {
        svg.circle(sx(ball->center[0]), sy(ball->center[1]), std::max(4.0, ball->tolerance * scale), "none",
                   "#ff0000", 2.0, "goal");
    } else {
        svg.circle(sx(scene.start[0]), sy(scene.start[1]), std::get<EscapeGoal>(scene.goal).threshold * scale,
                   "none", "#ff0000", 1.0, "goal");
    }
    return svg.str();
}

void emit_tree_svg(const Scene& scene, const TreeDump& dump, const std::string& out_path) {
    const std::string doc = tree_svg(scene, dump);
    std::ofstream out(out_path);
    require(static_cast<bool>(out), "cannot write " + out_path);
    out << doc;
}

}  // namespace sisp
