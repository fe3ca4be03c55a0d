#ifndef FOLLOW_GEOMETRY_HPP
#define FOLLOW_GEOMETRY_HPP

#include <cmath>
#include <span>
#include <vector>

namespace follow {

/// Wrap an angle into (-pi, pi].
double normalize_angle(double theta);

/// Shortest angular separation on the circle, in [0, pi].
double angle_diff(double t1, double t2);

/// Planar end-effector pose. theta is kept normalized into (-pi, pi].
struct TaskPose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;

    static TaskPose make(double x, double y, double theta) {
        return TaskPose{x, y, normalize_angle(theta)};
    }
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct Segment2 {
    Point2 a;
    Point2 b;
};

/// Weighting of the rotational term of the task-space metric,
/// in meters per radian.
struct MetricWeights {
    double w_rot = 0.17;
};

/// Weighted task-space distance: planar Euclidean distance plus
/// w_rot times the angular separation.
double task_distance(const TaskPose& a, const TaskPose& b, const MetricWeights& w);

/// Interpolate between two poses: positions linearly, angle along the
/// shortest arc (a tie at exactly pi breaks toward the positive direction).
TaskPose interpolate_pose(const TaskPose& a, const TaskPose& b, double t);

/// A task-space reference path: at least two waypoints, no two consecutive
/// waypoints identical under task_distance (tolerance 1e-12).
class Polyline {
public:
    /// Validates and normalizes; throws InputError on violation.
    explicit Polyline(std::vector<TaskPose> points, const MetricWeights& w = {});

    const std::vector<TaskPose>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const TaskPose& operator[](std::size_t i) const { return points_[i]; }

    /// Total positional arc length (rotation ignored).
    double arc_length() const;

    /// Pose at positional-arc-length fraction alpha in [0, 1]. If the path
    /// has zero positional length the parameterization falls back to being
    /// uniform in waypoint index.
    TaskPose pose_at(double alpha) const;

private:
    std::vector<TaskPose> points_;
    std::vector<double> cumlen_;  // cumulative positional length, cumlen_[0] = 0
};

/// Insert r evenly interpolated interior points into every segment.
/// Original points appear unchanged, in order.
Polyline subdivide(const Polyline& poly, int r);

/// Interior subdivision points of the segment a-b at fractions
/// i/(r+1), i = 1..r. Exposed so edge refinements reproduce build-from-scratch
/// values bit for bit.
std::vector<TaskPose> segment_interior_points(const TaskPose& a, const TaskPose& b, int r);

}  // namespace follow

#endif
