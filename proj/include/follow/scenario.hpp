#ifndef FOLLOW_SCENARIO_HPP
#define FOLLOW_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "follow/baselines.hpp"
#include "follow/densify.hpp"

namespace follow {

/// A fully specified planning problem. Loaded from strict JSON: unknown
/// fields are rejected, and all module invariants are re-validated on load.
struct Scenario {
    ArmModel arm;
    World world;
    Polyline reference;
    MetricWeights metric;
    PlannerOptions planner;
    Strategy strategy;
    Budget budget;
    std::uint64_t seed = 0;
};

Scenario load_scenario(const std::string& path);
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);
void save_scenario(const std::string& path, const Scenario& s);

/// Result payload written by `plan`: the solution (or failure), the scored
/// pose sequences it can be re-evaluated from, and the trace rows.
struct RunOutput {
    std::string planner;  // frechet | greedy-ik | vector-field
    bool feasible = false;
    std::string failure_reason;
    double frechet_cost = 0.0;
    double bottleneck_cost = 0.0;  // main planner: equals frechet_cost
    int resolution_lg = 0;
    int resolution_ref = 0;
    std::vector<Config> configs;
    std::vector<TaskPose> ee_poses;   // scored FK trace
    std::vector<TaskPose> ref_poses;  // scored reference discretization
    std::vector<Config> snapshot_configs;  // one config per layer, for rendering
    Trace trace;
    nlohmann::json layered_debug;  // LayeredGraph dump (main planner only)
};

nlohmann::json run_output_to_json(const RunOutput& out);
RunOutput run_output_from_json(const nlohmann::json& j);
void save_run_output(const std::string& path, const RunOutput& out);
RunOutput load_run_output(const std::string& path);

/// trace.csv with the exact column order:
/// iteration,wall_seconds,best_frechet,n_layers,total_ik,max_resolution,
/// update_kind,method,collision_checks_cum
std::string trace_to_csv(const Trace& trace);
void save_trace_csv(const std::string& path, const Trace& trace);

/// Layered-graph debug dump (layers, configurations, edges with status).
nlohmann::json layered_graph_to_json(const LayeredGraph& lg, const RefGraph& ref);

/// Run the configured planner on a scenario. CLI overrides (strategy,
/// budgets) are applied by the caller before this.
RunOutput run_frechet_planner(const Scenario& s);
RunOutput run_baseline_planner(const Scenario& s, const std::string& which);

// --- scenario generation ---

struct GenParams {
    int n_obstacles = 4;
    int path_control_points = 5;
    double obstacle_half_min = 0.05;
    double obstacle_half_max = 0.18;
    double obstacle_offset_min = 0.3;
    double obstacle_offset_max = 0.8;
    long long budget_iterations = 100;
};

/// Reproducible random scenario: a 4-link unit arm, a smoothed random
/// reference path inside the reachable annulus, and random convex boxes
/// placed near (but off) the path. Endpoint IK feasibility is enforced by
/// rejection.
Scenario make_random_scenario(std::uint64_t seed, const GenParams& params = {});

/// Obstacle-free straight-line scenario used for convergence checks.
Scenario make_straight_line_scenario();

/// Scenarios where greedy projection-style following runs into an obstacle
/// the graph planner can avoid by picking a different IK branch.
std::vector<Scenario> make_myopic_corpus();

/// A scenario whose goal region is fenced off: planning stays infeasible.
Scenario make_walled_goal_scenario();

}  // namespace follow

#endif
