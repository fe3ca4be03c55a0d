// frechet-follow: plan configuration-space paths whose end-effector trace
// stays close (in discrete Frechet distance) to a task-space reference path.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "follow/bench.hpp"
#include "follow/errors.hpp"
#include "follow/frechet.hpp"
#include "follow/render.hpp"
#include "follow/scenario.hpp"

namespace fs = std::filesystem;
using follow::Scenario;
using nlohmann::json;

namespace {

int fail(const std::string& type, const std::string& msg) {
    json err = {{"error", msg}, {"type", type}};
    std::cerr << err.dump() << "\n";
    return 1;
}

follow::Strategy parse_strategy(const std::string& spec) {
    // hybrid:p=0.25 | ltg:m=5
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    const auto eq = arg.find('=');
    std::string key = eq == std::string::npos ? "" : arg.substr(0, eq);
    std::string val = eq == std::string::npos ? arg : arg.substr(eq + 1);
    if (kind == "hybrid") {
        if (!key.empty() && key != "p") throw follow::InputError("hybrid takes p=<value>");
        return follow::Strategy::hybrid(val.empty() ? 0.25 : std::stod(val));
    }
    if (kind == "ltg" || kind == "local-then-global") {
        if (!key.empty() && key != "m") throw follow::InputError("ltg takes m=<value>");
        return follow::Strategy::local_then_global(val.empty() ? 5 : std::stoi(val));
    }
    throw follow::InputError("unknown strategy '" + spec + "' (want hybrid:p=.. or ltg:m=..)");
}

std::vector<follow::TaskPose> load_pose_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw follow::ParseError("cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw follow::ParseError(std::string("JSON parse error: ") + e.what(), path);
    }
    const json* arr = nullptr;
    if (j.is_array())
        arr = &j;
    else if (j.contains("reference_path"))
        arr = &j["reference_path"];
    else if (j.contains("path"))
        arr = &j["path"];
    else
        throw follow::ParseError("expected a pose array, or an object with 'path' or "
                                 "'reference_path'",
                                 path);
    std::vector<follow::TaskPose> out;
    for (const auto& p : *arr) {
        if (!p.is_array() || p.size() != 3)
            throw follow::ParseError("poses must be [x, y, theta]", path);
        out.push_back(follow::TaskPose::make(p[0].get<double>(), p[1].get<double>(),
                                             p[2].get<double>()));
    }
    if (out.empty()) throw follow::ParseError("empty pose list", path);
    return out;
}

int cmd_plan(const std::string& scenario_file, const std::string& planner,
             const std::optional<std::string>& strategy_spec,
             const std::optional<long long>& budget_iters,
             const std::optional<double>& budget_secs, const std::string& out_dir) {
    Scenario s = follow::load_scenario(scenario_file);
    if (strategy_spec) s.strategy = parse_strategy(*strategy_spec);
    if (budget_iters) s.budget.max_iterations = *budget_iters;
    if (budget_secs) s.budget.max_seconds = *budget_secs;
    if (!s.budget.max_iterations && !s.budget.max_seconds)
        throw follow::InputError("no budget: set --budget-iters and/or --budget-secs "
                                 "(or a budget in the scenario)");

    follow::RunOutput out;
    if (planner == "frechet")
        out = follow::run_frechet_planner(s);
    else
        out = follow::run_baseline_planner(s, planner);

    fs::create_directories(out_dir);
    follow::save_run_output((fs::path(out_dir) / "solution.json").string(), out);
    follow::save_trace_csv((fs::path(out_dir) / "trace.csv").string(), out.trace);
    follow::save_svg((fs::path(out_dir) / "render.svg").string(),
                     follow::render_svg(s, &out));
    if (!out.feasible) {
        std::cout << "infeasible: " << out.failure_reason << "\n";
        return 2;
    }
    std::cout << "frechet_cost " << out.frechet_cost << "\n";
    return 0;
}

int cmd_eval_frechet(const std::string& file_a, const std::string& file_b, double w_rot) {
    const auto pa = load_pose_list(file_a);
    const auto pb = load_pose_list(file_b);
    const follow::MetricWeights w{w_rot};
    const auto res = follow::discrete_frechet(std::span<const follow::TaskPose>(pa),
                                              std::span<const follow::TaskPose>(pb), w);
    const auto idx = follow::bottleneck_index(res.witness, std::span<const follow::TaskPose>(pa),
                                              std::span<const follow::TaskPose>(pb), w);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", res.cost);
    std::cout << "cost " << buf << "\n";
    std::cout << "bottleneck_index " << idx.first << " " << idx.second << "\n";
    return 0;
}

int cmd_gen(int count, std::uint64_t seed, int obstacles, const std::string& out_dir) {
    fs::create_directories(out_dir);
    follow::GenParams params;
    params.n_obstacles = obstacles;
    for (int i = 0; i < count; ++i) {
        const auto s = follow::make_random_scenario(seed + static_cast<std::uint64_t>(i),
                                                    params);
        char name[64];
        std::snprintf(name, sizeof(name), "scenario_%04d.json", i);
        follow::save_scenario((fs::path(out_dir) / name).string(), s);
    }
    std::cout << "wrote " << count << " scenarios to " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Anytime reference-path following for a planar redundant arm"};
    app.require_subcommand(1);

    // plan
    auto* plan = app.add_subcommand("plan", "Plan on one scenario and write outputs");
    std::string scenario_file, out_dir = "out";
    std::string planner = "frechet";
    std::optional<std::string> strategy_spec;
    std::optional<long long> budget_iters;
    std::optional<double> budget_secs;
    plan->add_option("--scenario", scenario_file, "Scenario JSON")->required();
    plan->add_option("--planner", planner, "frechet | greedy-ik | vector-field")
        ->check(CLI::IsMember({"frechet", "greedy-ik", "vector-field"}));
    plan->add_option("--strategy", strategy_spec, "hybrid:p=0.25 | ltg:m=5");
    plan->add_option("--budget-iters", budget_iters, "Max densification iterations");
    plan->add_option("--budget-secs", budget_secs, "Max wall-clock seconds");
    plan->add_option("--out", out_dir, "Output directory");

    // bench
    auto* bench = app.add_subcommand("bench", "Sweep scenarios x planners x repeats");
    std::string scenario_dir, bench_out = "bench_out";
    std::vector<std::string> planners{"frechet"};
    int repeats = 1;
    std::uint64_t seed_base = 0;
    bench->add_option("--scenario-dir", scenario_dir, "Directory of scenario JSONs")
        ->required();
    bench->add_option("--planners", planners, "Planner list")->delimiter(',');
    bench->add_option("--repeats", repeats, "Repeats per cell");
    bench->add_option("--seed-base", seed_base, "Base seed for cell derivation");
    bench->add_option("--out", bench_out, "Output directory");

    // eval-frechet
    auto* evalf = app.add_subcommand("eval-frechet", "Discrete Frechet distance of two paths");
    std::string file_a, file_b;
    double w_rot = 0.17;
    evalf->add_option("--a", file_a, "First pose-list JSON")->required();
    evalf->add_option("--b", file_b, "Second pose-list JSON")->required();
    evalf->add_option("--w-rot", w_rot, "Rotational weight (m/rad)");

    // gen-scenarios
    auto* gen = app.add_subcommand("gen-scenarios", "Generate a random scenario corpus");
    int count = 10, obstacles = 4;
    std::uint64_t gen_seed = 1;
    std::string gen_out = "scenarios";
    gen->add_option("--count", count, "Number of scenarios");
    gen->add_option("--seed", gen_seed, "Base seed");
    gen->add_option("--obstacles", obstacles, "Obstacles per scenario");
    gen->add_option("--out", gen_out, "Output directory")->required();

    // render
    auto* render = app.add_subcommand("render", "Render a scenario (and solution) to SVG");
    std::string render_scenario, render_solution, render_out = "render.svg";
    render->add_option("--scenario", render_scenario, "Scenario JSON")->required();
    render->add_option("--solution", render_solution, "solution.json from plan");
    render->add_option("--out", render_out, "Output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*plan)
            return cmd_plan(scenario_file, planner, strategy_spec, budget_iters, budget_secs,
                            out_dir);
        if (*bench) {
            follow::BenchParams params;
            for (const auto& entry : fs::directory_iterator(scenario_dir))
                if (entry.path().extension() == ".json")
                    params.scenario_files.push_back(entry.path().string());
            std::sort(params.scenario_files.begin(), params.scenario_files.end());
            params.planners = planners;
            params.repeats = repeats;
            params.seed_base = seed_base;
            params.out_dir = bench_out;
            follow::run_bench(params);
            std::cout << "bench outputs in " << bench_out << "\n";
            return 0;
        }
        if (*evalf) return cmd_eval_frechet(file_a, file_b, w_rot);
        if (*gen) return cmd_gen(count, gen_seed, obstacles, gen_out);
        if (*render) {
            const Scenario s = follow::load_scenario(render_scenario);
            std::optional<follow::RunOutput> sol;
            if (!render_solution.empty()) sol = follow::load_run_output(render_solution);
            follow::save_svg(render_out, follow::render_svg(s, sol ? &*sol : nullptr));
            return 0;
        }
    } catch (const follow::ParseError& e) {
        return fail("parse_error", e.what());
    } catch (const follow::ConstructionError& e) {
        return fail("construction_error", e.what());
    } catch (const follow::InputError& e) {
        return fail("input_error", e.what());
    } catch (const std::exception& e) {
        return fail("internal_error", e.what());
    }
    return fail("internal_error", "no subcommand dispatched");
}
