#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sisp/bandit.hpp"
#include "sisp/bench.hpp"
#include "sisp/cspace.hpp"
#include "sisp/pca_cylinder.hpp"
#include "sisp/planners.hpp"
#include "sisp/scale_search.hpp"

namespace py = pybind11;
using namespace sisp;

namespace {

ArmId arm_from_name(const std::string& name) {
    for (ArmId arm : kArms)
        if (arm_name(arm) == name) return arm;
    throw ContractError("unknown arm '" + name + "'");
}

py::dict planner_result_dict(const PlannerResult& r, const std::string& trace_json) {
    py::dict d;
    d["outcome"] = std::string(outcome_name(r.outcome));
    d["path"] = r.path;
    d["path_length"] = r.solved() ? py::object(py::float_(path_length(r.path))) : py::object(py::none());
    d["iterations"] = r.stats.iterations;
    d["wall_time_s"] = r.stats.wall_time_s;
    d["tree_size"] = r.stats.tree_size;
    d["r_star"] = r.stats.r_star;
    d["scale_converged"] = r.stats.scale_converged;
    py::dict pulls;
    for (ArmId arm : kArms) pulls[py::str(std::string(arm_name(arm)))] = r.stats.pulls[index_of(arm)];
    d["pulls"] = pulls;
    d["diagnostics"] = r.stats.diagnostics;
    if (!trace_json.empty()) d["trace"] = trace_json;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sampling-based motion planning with entropy-scaled exploration";

    py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
    py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ArithmeticError);
    py::register_exception<SceneError>(m, "SceneError", PyExc_ValueError);

    py::class_<Scene>(m, "Scene")
        .def_readonly("name", &Scene::name)
        .def_readonly("start", &Scene::start)
        .def_property_readonly("dimension", &Scene::dimension)
        .def_property_readonly("resolution", &Scene::resolution)
        .def_property_readonly("bounds", [](const Scene& s) { return py::make_tuple(s.bounds.lo, s.bounds.hi); })
        .def("is_state_valid", [](const Scene& s, const Config& q) { return is_state_valid(s, q); })
        .def("check_motion", [](const Scene& s, const Config& a, const Config& b) { return check_motion(s, a, b); })
        .def("goal_satisfied", [](const Scene& s, const Config& q) { return goal_satisfied(s, q); })
        .def("to_json", [](const Scene& s) { return dump_scene(s); });

    m.def("load_scene", [](const std::string& text) { return load_scene(text); }, py::arg("text"));
    m.def("load_scene_file", &load_scene_file, py::arg("path"));
    m.def("generate_tunnel_scene", &generate_tunnel_scene, py::arg("gap"), py::arg("length") = 30.0,
          py::arg("half_extent") = 50.0);

    m.def(
        "find_entropy_scale",
        [](const Scene& scene, const Config& q0, std::uint64_t seed, double r0, int batch) {
            ScaleParams p;
            p.r0 = r0;
            p.batch = batch;
            RngStream rng(seed);
            const auto r = find_entropy_scale(scene, q0, p, rng);
            py::list history;
            for (const auto& h : r.history) history.append(py::make_tuple(h.radius, h.alpha));
            py::dict d;
            d["r_star"] = r.r_star;
            d["converged"] = r.converged;
            d["valid_samples"] = r.valid_samples;
            d["history"] = history;
            return d;
        },
        py::arg("scene"), py::arg("q0"), py::arg("seed") = 0, py::arg("r0") = 1.0, py::arg("batch") = 64);

    m.def(
        "principal_axis",
        [](const std::vector<Config>& samples, const Config& origin, bool mean_centred) {
            return principal_axis(samples, origin, mean_centred ? AxisCentering::Mean : AxisCentering::Origin).axis;
        },
        py::arg("samples"), py::arg("origin"), py::arg("mean_centred") = false);

    m.def(
        "sample_cylinder",
        [](const Config& axis, const Config& origin, bool positive, double h_min, double h_max, double radius,
           int count, std::uint64_t seed) {
            CylinderSpec spec{axis, origin, positive ? Direction::Positive : Direction::Negative, h_min, h_max, radius};
            RngStream rng(seed);
            std::vector<Config> out;
            out.reserve(static_cast<std::size_t>(count));
            for (int i = 0; i < count; ++i) out.push_back(sample_cylinder(spec, rng).q);
            return out;
        },
        py::arg("axis"), py::arg("origin"), py::arg("positive") = true, py::arg("h_min") = 0.0,
        py::arg("h_max") = 1.0, py::arg("radius") = 1.0, py::arg("count") = 1, py::arg("seed") = 0);

    py::class_<BanditState>(m, "Bandit")
        .def(py::init([](std::size_t window, double beta) { return BanditState(window, beta); }),
             py::arg("window") = 256, py::arg("beta") = std::sqrt(2.0))
        .def("select", [](const BanditState& b) { return std::string(arm_name(b.select_arm())); })
        .def("scores", &BanditState::scores)
        .def("update", [](BanditState& b, const std::string& arm, double reward) { b.update(arm_from_name(arm), reward); },
             py::arg("arm"), py::arg("reward"))
        .def("set_enabled", [](BanditState& b, const std::string& arm, bool on) { b.set_enabled(arm_from_name(arm), on); },
             py::arg("arm"), py::arg("enabled"));

    m.def("arm_names", [] {
        std::vector<std::string> names;
        for (ArmId arm : kArms) names.emplace_back(arm_name(arm));
        return names;
    });
    m.def(
        "compute_reward",
        [](const std::string& arm, bool valid, double dist) { return compute_reward(arm_from_name(arm), valid, dist, {}); },
        py::arg("arm"), py::arg("valid"), py::arg("dist_from_start"));

    m.def("planner_names", &planner_names);
    m.def(
        "plan",
        [](const Scene& scene, const std::string& planner, std::uint64_t seed, double timeout, bool trace) {
            if (!is_planner_name(planner)) throw ContractError("unknown planner '" + planner + "'");
            PlannerParams params;
            params.timeout_s = timeout;
            params.record_trace = trace;
            RngStream rng(seed);
            PlannerResult result;
            {
                py::gil_scoped_release release;
                result = run_planner(planner, scene, params, rng);
            }
            std::string trace_json;
            if (trace) {
                std::ostringstream out;
                write_trace(out, scene, planner, seed, result);
                trace_json = out.str();
            }
            return planner_result_dict(result, trace_json);
        },
        py::arg("scene"), py::arg("planner") = "mab-rrt", py::arg("seed") = 0, py::arg("timeout") = 10.0,
        py::arg("trace") = false);
}
