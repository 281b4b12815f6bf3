#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef SISP_CLI_PATH
#error "SISP_CLI_PATH must point at the command-line binary"
#endif

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "sisp-cli-test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = std::string(SISP_CLI_PATH) + " " + args + " >" + (workdir() / "stdout").string() +
                            " 2>" + (workdir() / "stderr").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

}  // namespace

TEST_CASE("gen-tunnel and plan") {
    REQUIRE(run("gen-tunnel --gap 5 --out " + path("t5.json")) == 0);
    REQUIRE(run("plan --scene " + path("t5.json") + " --planner mab-rrt --seed 3 --timeout 10 --trace " +
                path("a.json") + " --svg " + path("a.svg")) == 0);
    const std::string out = slurp(workdir() / "stdout");
    CHECK(out.find("outcome solved") != std::string::npos);
    CHECK(slurp(workdir() / "a.svg").find("r-star") != std::string::npos);
}

TEST_CASE("plan writes identical traces for identical seeds") {
    REQUIRE(run("gen-tunnel --gap 10 --out " + path("t10.json")) == 0);
    REQUIRE(run("plan --scene " + path("t10.json") + " --planner mab-rrt --seed 7 --timeout 10 --trace " +
                path("x.json")) == 0);
    const std::string first_out = slurp(workdir() / "stdout");
    REQUIRE(run("plan --scene " + path("t10.json") + " --planner mab-rrt --seed 7 --timeout 10 --trace " +
                path("y.json")) == 0);
    CHECK(slurp(workdir() / "stdout") == first_out);
    CHECK(slurp(workdir() / "x.json") == slurp(workdir() / "y.json"));
}

TEST_CASE("exit codes") {
    REQUIRE(run("gen-tunnel --gap 5 --out " + path("t5.json")) == 0);
    CHECK(run("") == 1);
    CHECK(run("plan") == 1);
    CHECK(run("frobnicate") == 1);
    CHECK(run("plan --scene " + path("t5.json") + " --planner nope") == 1);
    CHECK(run("plan --scene " + path("t5.json") + " --timeout -1") == 1);

    std::ofstream(path("broken.json")) << "{\"name\": ";
    CHECK(run("plan --scene " + path("broken.json")) == 2);
    CHECK(run("plan --scene " + path("missing.json")) == 2);
    std::ofstream(path("bad_start.json"))
        << R"({"name":"x","dimension":2,"bounds":{"lo":[0,0],"hi":[10,10]},
              "obstacles":[{"kind":"sphere","center":[5,5],"radius":2}],
              "start":[5,5],"goal":{"kind":"escape","threshold":1}})";
    CHECK(run("plan --scene " + path("bad_start.json")) == 2);

    CHECK(run("plan --scene " + path("t5.json") + " --trace /nonexistent-dir/x.json") == 3);
}

TEST_CASE("scale-trace writes the radius history") {
    REQUIRE(run("gen-tunnel --gap 5 --out " + path("t5.json")) == 0);
    REQUIRE(run("scale-trace --scene " + path("t5.json") + " --seed 1 --out " + path("scale.csv")) == 0);
    const std::string csv = slurp(workdir() / "scale.csv");
    CHECK(csv.rfind("step,radius,alpha\n", 0) == 0);
    CHECK(slurp(workdir() / "stdout").find("converged true") != std::string::npos);
}

TEST_CASE("bench and plot") {
    std::ofstream(path("bench.json"))
        << R"({"scenes":[{"generator":"tunnel","gap":15}],"planners":["mab-rrt","rrt-uniform"],"runs":3,"timeout":5})";
    const std::string out = path("bench-out");
    REQUIRE(run("bench --config " + path("bench.json") + " --out " + out + " --jobs 2") == 0);
    const std::string csv = slurp(fs::path(out) / "results.csv");
    CHECK(csv.rfind("scene,planner,seed,outcome,wall_time_s,iterations,path_length,tree_size,r_star\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
    CHECK(fs::exists(fs::path(out) / "success_curve.svg"));

    REQUIRE(run("plot --in " + (fs::path(out) / "results.csv").string() + " --out " + path("curve.svg")) == 0);
    CHECK(slurp(workdir() / "curve.svg").find("<svg") != std::string::npos);
    CHECK(fs::exists(workdir() / "curve.csv"));
    CHECK(run("plot --in " + path("nothing.csv") + " --out " + path("c.svg")) == 1);
}
