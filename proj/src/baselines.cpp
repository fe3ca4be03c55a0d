#include "follow/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "follow/errors.hpp"

namespace follow {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Solve (J J^T + damping^2 I) y = e, return J^T y.
std::vector<double> dls_step(const Jacobian& jac, const double e[3], double damping) {
    const std::size_t n = jac.dx.size();
    const double* rows[3] = {jac.dx.data(), jac.dy.data(), jac.dtheta.data()};
    double a[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += rows[i][k] * rows[j][k];
            a[i][j] = s + (i == j ? damping * damping : 0.0);
        }
    // Gaussian elimination with partial pivoting on the 3x3 system.
    double b[3] = {e[0], e[1], e[2]};
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(a[perm[r]][col]) > std::fabs(a[perm[piv]][col])) piv = r;
        std::swap(perm[col], perm[piv]);
        const double diag = a[perm[col]][col];
        for (int r = col + 1; r < 3; ++r) {
            const double f = a[perm[r]][col] / diag;
            for (int c = col; c < 3; ++c) a[perm[r]][c] -= f * a[perm[col]][c];
            b[perm[r]] -= f * b[perm[col]];
        }
    }
    double y[3];
    for (int row = 2; row >= 0; --row) {
        double s = b[perm[row]];
        for (int c = row + 1; c < 3; ++c) s -= a[perm[row]][c] * y[c];
        y[row] = s / a[perm[row]][row];
    }
    std::vector<double> dq(n);
    for (std::size_t k = 0; k < n; ++k)
        dq[k] = rows[0][k] * y[0] + rows[1][k] * y[1] + rows[2][k] * y[2];
    return dq;
}

}  // namespace

const char* to_string(BaselineResult::Failure f) {
    using F = BaselineResult::Failure;
    switch (f) {
        case F::none: return "none";
        case F::ik_empty: return "ik_empty";
        case F::edge_collision: return "edge_collision";
        case F::collision: return "collision";
        case F::joint_limit: return "joint_limit";
        default: return "stall";
    }
}

double score_config_path(const std::vector<Config>& path, const ArmModel& arm,
                         const Polyline& reference, const MetricWeights& w,
                         int report_resolution) {
    if (path.empty()) return kInf;
    std::vector<TaskPose> trace;
    trace.push_back(fk(arm, path.front()));
    for (std::size_t i = 1; i < path.size(); ++i) {
        for (int s = 1; s <= report_resolution; ++s) {
            const double t =
                static_cast<double>(s) / static_cast<double>(report_resolution + 1);
            trace.push_back(fk(arm, interpolate_config(path[i - 1], path[i], t)));
        }
        trace.push_back(fk(arm, path[i]));
    }
    const Polyline ref_fine = subdivide(reference, report_resolution);
    return discrete_frechet(std::span<const TaskPose>(trace),
                            std::span<const TaskPose>(ref_fine.points()), w)
        .cost;
}

BaselineResult greedy_ik_plan(const ArmModel& arm, const World& world,
                              const Polyline& reference, const MetricWeights& w,
                              const BaselineParams& params, RandomEngine& rng) {
    const auto t0 = Clock::now();
    BaselineResult res;
    res.frechet_cost = kInf;
    const int n = params.n_waypoints;
    for (int j = 0; j < n; ++j) {
        const double alpha = static_cast<double>(j) / static_cast<double>(n - 1);
        const TaskPose target = reference.pose_at(alpha);
        Config pick;
        if (params.greedy_nearest && j > 0) {
            auto sols = sample_ik(arm, target, 8, rng, params.ik);
            if (sols.empty()) {
                res.failure = BaselineResult::Failure::ik_empty;
                res.failure_index = j;
                res.wall_seconds = seconds_since(t0);
                return res;
            }
            std::size_t best = 0;
            for (std::size_t s = 1; s < sols.size(); ++s)
                if (config_distance(sols[s], res.path.back()) <
                    config_distance(sols[best], res.path.back()))
                    best = s;
            pick = sols[best];
        } else {
            auto sols = sample_ik(arm, target, 1, rng, params.ik);
            if (sols.empty()) {
                res.failure = BaselineResult::Failure::ik_empty;
                res.failure_index = j;
                res.wall_seconds = seconds_since(t0);
                return res;
            }
            pick = sols.front();
        }
        res.path.push_back(std::move(pick));
    }
    for (int j = 0; j + 1 < n; ++j) {
        if (edge_in_collision(world, arm, res.path[j], res.path[j + 1],
                              params.edge_collision_step)) {
            res.failure = BaselineResult::Failure::edge_collision;
            res.failure_index = j;
            res.path.clear();
            res.wall_seconds = seconds_since(t0);
            return res;
        }
    }
    res.frechet_cost = score_config_path(res.path, arm, reference, w, params.report_resolution);
    res.wall_seconds = seconds_since(t0);
    return res;
}

BaselineResult vector_field_plan(const ArmModel& arm, const World& world,
                                 const Polyline& reference, const MetricWeights& w,
                                 const BaselineParams& params, RandomEngine& rng) {
    const auto t0 = Clock::now();
    BaselineResult res;
    res.frechet_cost = kInf;
    auto fail = [&](BaselineResult::Failure f) {
        res.failure = f;
        res.path.clear();
        res.wall_seconds = seconds_since(t0);
        return res;
    };

    auto start = sample_ik(arm, reference.pose_at(0.0), 1, rng, params.ik);
    if (start.empty()) return fail(BaselineResult::Failure::ik_empty);
    Config q = start.front();
    if (config_in_collision(world, arm, q)) return fail(BaselineResult::Failure::collision);
    res.path.push_back(q);

    const double total = reference.arc_length();
    const int n_targets =
        std::max(1, static_cast<int>(std::ceil(total / params.track_spacing)));
    int target_idx = 1;
    TaskPose target = reference.pose_at(static_cast<double>(target_idx) / n_targets);

    double prev_err = kInf;
    int stalled = 0;
    for (int step = 0; step < params.max_steps; ++step) {
        const TaskPose p = fk(arm, q);
        const double err = task_distance(p, target, w);
        if (err <= params.goal_tolerance) {
            res.path.push_back(q);
            if (target_idx >= n_targets) {
                res.frechet_cost =
                    score_config_path(res.path, arm, reference, w, params.report_resolution);
                res.wall_seconds = seconds_since(t0);
                return res;
            }
            ++target_idx;
            target = reference.pose_at(static_cast<double>(target_idx) / n_targets);
            prev_err = kInf;
            stalled = 0;
            continue;
        }
        if (prev_err - err < 1e-9) {
            if (++stalled >= params.stall_window) return fail(BaselineResult::Failure::stall);
        } else {
            stalled = 0;
        }
        prev_err = err;

        const double e[3] = {target.x - p.x, target.y - p.y,
                             std::remainder(target.theta - p.theta, 2.0 * M_PI)};
        auto dq = dls_step(jacobian(arm, q), e, params.dls_damping);
        for (auto& d : dq) d = std::clamp(d, -params.step_size, params.step_size);
        for (std::size_t i = 0; i < q.size(); ++i) q[i] += dq[i];
        if (!arm.within_limits(q)) return fail(BaselineResult::Failure::joint_limit);
        if (config_in_collision(world, arm, q)) return fail(BaselineResult::Failure::collision);
    }
    return fail(BaselineResult::Failure::stall);
}

}  // namespace follow
