#ifndef FOLLOW_KINEMATICS_HPP
#define FOLLOW_KINEMATICS_HPP

#include <array>
#include <vector>

#include "follow/geometry.hpp"
#include "follow/rng.hpp"

namespace follow {

/// Joint-angle vector of a planar revolute arm.
struct Config {
    std::vector<double> angles;

    std::size_t size() const { return angles.size(); }
    double operator[](std::size_t i) const { return angles[i]; }
    double& operator[](std::size_t i) { return angles[i]; }
};

/// Max-norm and Euclidean joint-space distances.
double config_max_norm(const Config& a, const Config& b);
double config_distance(const Config& a, const Config& b);

/// Straight-line joint-space interpolation. Shared by edge subsampling and
/// collision interpolation so both produce identical intermediate configs.
Config interpolate_config(const Config& a, const Config& b, double t);

struct JointLimit {
    double lo = -M_PI;
    double hi = M_PI;
};

/// Planar N-link revolute arm; joint i sits at the distal end of link i-1.
class ArmModel {
public:
    ArmModel(std::vector<double> link_lengths, std::vector<JointLimit> joint_limits,
             TaskPose base_pose = {});

    std::size_t dof() const { return link_lengths_.size(); }
    const std::vector<double>& link_lengths() const { return link_lengths_; }
    const std::vector<JointLimit>& joint_limits() const { return joint_limits_; }
    const TaskPose& base_pose() const { return base_pose_; }
    double total_reach() const { return total_reach_; }

    bool within_limits(const Config& q) const;

private:
    std::vector<double> link_lengths_;
    std::vector<JointLimit> joint_limits_;
    TaskPose base_pose_;
    double total_reach_ = 0.0;
};

/// End-effector pose: heading accumulates joint angles on top of the base
/// pose, position accumulates link vectors.
TaskPose fk(const ArmModel& arm, const Config& q);

/// One segment per link, chained from the base; the last endpoint is the
/// end-effector position.
std::vector<Segment2> fk_links(const ArmModel& arm, const Config& q);

/// 3xN task-space Jacobian, rows d(x)/dq, d(y)/dq, d(theta)/dq.
struct Jacobian {
    std::vector<double> dx;
    std::vector<double> dy;
    std::vector<double> dtheta;  // identically 1 for revolute planar joints
};

Jacobian jacobian(const ArmModel& arm, const Config& q);

struct IkParams {
    double tolerance = 1e-9;      // task-space round-trip tolerance
    int attempts_per_count = 50;  // attempt budget = attempts_per_count * count
    double distinct_eps = 1e-9;   // Euclidean C-space dedupe threshold
};

/// Randomized analytic IK: free joints 1..N-3 are drawn uniformly within
/// limits, the terminal 3R chain is solved in closed form (both elbow
/// branches). Returns up to `count` pairwise-distinct configurations; an
/// empty result means the attempt budget found no solution (e.g. the target
/// is out of reach) and is not an error. Requires N >= 3.
std::vector<Config> sample_ik(const ArmModel& arm, const TaskPose& target, int count,
                              RandomEngine& rng, const IkParams& params = {});

}  // namespace follow

#endif
