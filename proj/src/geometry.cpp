#include "follow/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "follow/errors.hpp"

namespace follow {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double normalize_angle(double theta) {
    double r = std::remainder(theta, kTwoPi);
    if (r <= -M_PI) r += kTwoPi;
    return r;
}

double angle_diff(double t1, double t2) {
    return std::fabs(std::remainder(t1 - t2, kTwoPi));
}

double task_distance(const TaskPose& a, const TaskPose& b, const MetricWeights& w) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy) + w.w_rot * angle_diff(a.theta, b.theta);
}

TaskPose interpolate_pose(const TaskPose& a, const TaskPose& b, double t) {
    double dth = std::remainder(b.theta - a.theta, kTwoPi);
    if (dth == -M_PI) dth = M_PI;  // tie at pi: positive direction
    return TaskPose::make(a.x + (b.x - a.x) * t,
                          a.y + (b.y - a.y) * t,
                          a.theta + dth * t);
}

Polyline::Polyline(std::vector<TaskPose> points, const MetricWeights& w)
    : points_(std::move(points)) {
    if (points_.size() < 2) throw InputError("polyline needs at least 2 points");
    for (auto& p : points_) p.theta = normalize_angle(p.theta);
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
        if (task_distance(points_[i], points_[i + 1], w) <= 1e-12)
            throw InputError("polyline has identical consecutive points at index " +
                             std::to_string(i));
    }
    cumlen_.resize(points_.size());
    cumlen_[0] = 0.0;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        const double dx = points_[i].x - points_[i - 1].x;
        const double dy = points_[i].y - points_[i - 1].y;
        cumlen_[i] = cumlen_[i - 1] + std::sqrt(dx * dx + dy * dy);
    }
}

double Polyline::arc_length() const { return cumlen_.back(); }

TaskPose Polyline::pose_at(double alpha) const {
    alpha = std::clamp(alpha, 0.0, 1.0);
    if (alpha == 0.0) return points_.front();
    if (alpha == 1.0) return points_.back();
    const double total = cumlen_.back();
    if (total <= 0.0) {
        // Pure-rotation path: uniform in index space.
        const double s = alpha * static_cast<double>(points_.size() - 1);
        const auto i = static_cast<std::size_t>(s);
        return interpolate_pose(points_[i], points_[i + 1], s - static_cast<double>(i));
    }
    const double s = alpha * total;
    auto it = std::upper_bound(cumlen_.begin(), cumlen_.end(), s);
    auto hi = static_cast<std::size_t>(std::distance(cumlen_.begin(), it));
    hi = std::min(hi, points_.size() - 1);
    const std::size_t lo = hi - 1;
    const double seg = cumlen_[hi] - cumlen_[lo];
    const double t = seg > 0.0 ? (s - cumlen_[lo]) / seg : 0.0;
    return interpolate_pose(points_[lo], points_[hi], t);
}

std::vector<TaskPose> segment_interior_points(const TaskPose& a, const TaskPose& b, int r) {
    std::vector<TaskPose> out;
    out.reserve(static_cast<std::size_t>(std::max(r, 0)));
    for (int i = 1; i <= r; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(r + 1);
        out.push_back(interpolate_pose(a, b, t));
    }
    return out;
}

Polyline subdivide(const Polyline& poly, int r) {
    if (r < 0) throw InputError("subdivision count must be nonnegative");
    if (r == 0) return poly;
    std::vector<TaskPose> out;
    out.reserve(poly.size() + static_cast<std::size_t>(r) * (poly.size() - 1));
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        out.push_back(poly[i]);
        for (const auto& p : segment_interior_points(poly[i], poly[i + 1], r))
            out.push_back(p);
    }
    out.push_back(poly[poly.size() - 1]);
    return Polyline(std::move(out));
}

}  // namespace follow
