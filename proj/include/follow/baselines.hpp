#ifndef FOLLOW_BASELINES_HPP
#define FOLLOW_BASELINES_HPP

#include <string>
#include <vector>

#include "follow/frechet.hpp"
#include "follow/world.hpp"

namespace follow {

struct BaselineParams {
    int n_waypoints = 4;
    double edge_collision_step = 0.05;
    /// Subdivision applied to both the solution path and the reference when
    /// scoring (the fixed reporting resolution).
    int report_resolution = 7;
    IkParams ik;
    /// Nearest-to-previous IK selection for the greedy planner instead of
    /// first-sampled.
    bool greedy_nearest = false;
    // vector-field integration
    double step_size = 0.05;      // per-joint clip per step, radians
    double track_spacing = 0.02;  // arc-length advance of the tracked target, meters
    double goal_tolerance = 1e-3;
    double dls_damping = 1e-6;
    int max_steps = 200000;
    int stall_window = 50;
};

struct BaselineResult {
    enum class Failure { none, ik_empty, edge_collision, collision, joint_limit, stall };
    Failure failure = Failure::none;
    int failure_index = -1;  // waypoint / segment index for greedy failures
    std::vector<Config> path;
    double frechet_cost = 0.0;  // +inf on failure
    double wall_seconds = 0.0;

    bool ok() const { return failure == Failure::none; }
};

const char* to_string(BaselineResult::Failure f);

/// Discrete Frechet distance between the FK trace of a C-space path and the
/// reference, both subdivided at the reporting resolution. This is the same
/// scoring code path the main planner's outputs go through.
double score_config_path(const std::vector<Config>& path, const ArmModel& arm,
                         const Polyline& reference, const MetricWeights& w,
                         int report_resolution);

/// One IK solution per waypoint, straight C-space interpolation in between,
/// no backtracking.
BaselineResult greedy_ik_plan(const ArmModel& arm, const World& world,
                              const Polyline& reference, const MetricWeights& w,
                              const BaselineParams& params, RandomEngine& rng);

/// Damped-least-squares pseudo-inverse servoing toward a target that slides
/// along the reference by arc length. Myopic by construction.
BaselineResult vector_field_plan(const ArmModel& arm, const World& world,
                                 const Polyline& reference, const MetricWeights& w,
                                 const BaselineParams& params, RandomEngine& rng);

}  // namespace follow

#endif
