#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "follow/errors.hpp"
#include "follow/render.hpp"
#include "follow/scenario.hpp"

using namespace follow;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json minimal_scenario_json() {
    return json::parse(R"({
      "arm": {
        "link_lengths": [1.0, 1.0, 1.0, 1.0],
        "joint_limits": [[-3.141592653589793, 3.141592653589793],
                         [-3.141592653589793, 3.141592653589793],
                         [-3.141592653589793, 3.141592653589793],
                         [-3.141592653589793, 3.141592653589793]],
        "base_pose": [0.0, 0.0, 0.0]
      },
      "world": {"obstacles": [], "self_collision": false},
      "reference_path": [[2.0, -0.9, 1.5707963267948966], [2.0, 0.9, 1.5707963267948966]],
      "metric": {"w_rot": 0.17},
      "planner": {
        "n0": 4, "k0": 4, "r0": 1,
        "strategy": {"kind": "ltg", "m": 5},
        "edge_collision_step": 0.05,
        "budget": {"max_iterations": 10}
      },
      "seed": 1
    })");
}

}  // namespace

TEST_CASE("minimal valid scenario loads") {
    const Scenario s = scenario_from_json(minimal_scenario_json());
    CHECK(s.arm.dof() == 4);
    CHECK(s.reference.size() == 2);
    CHECK(s.planner.n0 == 4);
    CHECK(s.strategy.kind == Strategy::Kind::local_then_global);
    CHECK(s.budget.max_iterations.value() == 10);
    CHECK(s.seed == 1);
}

TEST_CASE("3-link arm rejected naming the redundancy invariant") {
    json j = minimal_scenario_json();
    j["arm"]["link_lengths"] = {1.0, 1.0, 1.0};
    j["arm"]["joint_limits"] = {{-3.0, 3.0}, {-3.0, 3.0}, {-3.0, 3.0}};
    try {
        scenario_from_json(j);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("redundancy") != std::string::npos);
        CHECK(e.field == "arm.link_lengths");
    }
}

TEST_CASE("unknown fields are rejected at every level") {
    json j = minimal_scenario_json();
    j["extra_top"] = 1;
    CHECK_THROWS_AS(scenario_from_json(j), ParseError);
    j = minimal_scenario_json();
    j["planner"]["mystery"] = true;
    CHECK_THROWS_AS(scenario_from_json(j), ParseError);
    j = minimal_scenario_json();
    j["arm"]["color"] = "red";
    CHECK_THROWS_AS(scenario_from_json(j), ParseError);
    j = minimal_scenario_json();
    j["planner"]["strategy"]["p"] = 0.5;  // ltg takes m, not p
    CHECK_THROWS_AS(scenario_from_json(j), ParseError);
}

TEST_CASE("validation failures carry field diagnostics") {
    json j = minimal_scenario_json();
    j["planner"]["n0"] = 1;
    try {
        scenario_from_json(j);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.field == "planner.n0");
    }
    j = minimal_scenario_json();
    j["world"]["obstacles"] = json::array({{{"type", "circle"},
                                            {"center", {0.0, 0.0}},
                                            {"radius", -1.0}}});
    CHECK_THROWS_AS(scenario_from_json(j), ParseError);
}

TEST_CASE("scenario round-trips load-save-load identically") {
    const auto tmp = fs::temp_directory_path() / "follow_io_test";
    fs::create_directories(tmp);
    const Scenario s1 = scenario_from_json(minimal_scenario_json());
    save_scenario((tmp / "a.json").string(), s1);
    const Scenario s2 = load_scenario((tmp / "a.json").string());
    save_scenario((tmp / "b.json").string(), s2);
    std::ifstream fa(tmp / "a.json"), fb(tmp / "b.json");
    const std::string ca((std::istreambuf_iterator<char>(fa)),
                         std::istreambuf_iterator<char>());
    const std::string cb((std::istreambuf_iterator<char>(fb)),
                         std::istreambuf_iterator<char>());
    CHECK(ca == cb);
    CHECK(!ca.empty());
}

TEST_CASE("bundled scenario corpus round-trips") {
    const fs::path data(FOLLOW_DATA_DIR);
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(data / "scenarios")) {
        if (entry.path().extension() != ".json") continue;
        ++seen;
        const Scenario s = load_scenario(entry.path().string());
        const json j1 = scenario_to_json(s);
        const json j2 = scenario_to_json(scenario_from_json(j1));
        CHECK(j1 == j2);
    }
    CHECK(seen >= 3);
}

TEST_CASE("run output: solution cost is reproducible from its own data") {
    Scenario s = make_straight_line_scenario();
    s.budget.max_iterations = 8;
    const RunOutput out = run_frechet_planner(s);
    REQUIRE(out.feasible);
    const auto re = discrete_frechet(std::span<const TaskPose>(out.ee_poses),
                                     std::span<const TaskPose>(out.ref_poses), s.metric);
    CHECK(std::fabs(re.cost - out.frechet_cost) <= 1e-12);

    // and it survives a save/load cycle
    const auto tmp = fs::temp_directory_path() / "follow_io_test";
    fs::create_directories(tmp);
    save_run_output((tmp / "sol.json").string(), out);
    const RunOutput back = load_run_output((tmp / "sol.json").string());
    CHECK(back.frechet_cost == out.frechet_cost);
    CHECK(back.ee_poses.size() == out.ee_poses.size());
    CHECK(back.trace.size() == out.trace.size());
    const auto re2 = discrete_frechet(std::span<const TaskPose>(back.ee_poses),
                                      std::span<const TaskPose>(back.ref_poses), s.metric);
    CHECK(std::fabs(re2.cost - back.frechet_cost) <= 1e-12);
}

TEST_CASE("trace CSV column order and determinism") {
    Trace t;
    TraceRow r;
    r.iteration = 0;
    r.wall_seconds = 0.5;
    r.best_frechet = std::numeric_limits<double>::infinity();
    r.n_layers = 4;
    r.total_ik = 16;
    r.max_resolution = 1;
    r.update_kind = "init";
    r.method = "init";
    r.collision_checks_cum = 10;
    t.push_back(r);
    const std::string csv = trace_to_csv(t);
    CHECK(csv.find("iteration,wall_seconds,best_frechet,n_layers,total_ik,max_resolution,"
                   "update_kind,method,collision_checks_cum\n") == 0);
    CHECK(csv.find("0,0.5,inf,4,16,1,init,init,10\n") != std::string::npos);
}

TEST_CASE("random scenario generation is deterministic and loadable") {
    const Scenario a = make_random_scenario(5);
    const Scenario b = make_random_scenario(5);
    CHECK(scenario_to_json(a) == scenario_to_json(b));
    CHECK(a.arm.dof() == 4);
    CHECK(!a.world.obstacles().empty());
    // survives strict parsing
    CHECK_NOTHROW(scenario_from_json(scenario_to_json(a)));
}

TEST_CASE("rendering is byte-identical across invocations") {
    Scenario s = make_straight_line_scenario();
    s.budget.max_iterations = 5;
    const RunOutput out = run_frechet_planner(s);
    const std::string svg1 = render_svg(s, &out);
    const std::string svg2 = render_svg(s, &out);
    CHECK(svg1 == svg2);
    CHECK(svg1.find("<svg") == 0);
    CHECK(svg1.find("polyline") != std::string::npos);
}
