#ifndef FOLLOW_WORLD_HPP
#define FOLLOW_WORLD_HPP

#include <variant>
#include <vector>

#include "follow/geometry.hpp"
#include "follow/kinematics.hpp"

namespace follow {

struct Circle {
    Point2 center;
    double radius = 0.0;
};

/// Convex polygon, vertices in counter-clockwise order.
struct ConvexPolygon {
    std::vector<Point2> vertices;
};

struct Obstacle {
    std::variant<Circle, ConvexPolygon> shape;
};

Obstacle make_circle(double cx, double cy, double r);
Obstacle make_polygon(std::vector<Point2> ccw_vertices);
/// Axis-aligned-then-rotated rectangular box (CCW polygon).
Obstacle make_box(double cx, double cy, double half_w, double half_h, double angle);

/// Immutable 2D environment. All queries are read-only and thread-safe.
class World {
public:
    explicit World(std::vector<Obstacle> obstacles = {}, bool self_collision = false);

    const std::vector<Obstacle>& obstacles() const { return obstacles_; }
    bool self_collision_enabled() const { return self_collision_; }

private:
    std::vector<Obstacle> obstacles_;
    bool self_collision_;
};

// Exact closed-form predicates (1e-12 slack; boundary contact collides).
double point_segment_distance(const Point2& p, const Segment2& s);
double segment_segment_distance(const Segment2& a, const Segment2& b);
bool point_in_polygon(const Point2& p, const ConvexPolygon& poly);
bool segment_hits_obstacle(const Segment2& seg, const Obstacle& obs);

/// True iff any link segment touches any obstacle, or (when enabled) any
/// non-adjacent link pair intersects.
bool config_in_collision(const World& world, const ArmModel& arm, const Config& q);

/// C-space straight line from a to b sampled so consecutive samples differ by
/// at most `step` in max-norm; endpoints included.
bool edge_in_collision(const World& world, const ArmModel& arm, const Config& a,
                       const Config& b, double step);

/// Counting front-end used by planners so traces can report cumulative
/// configuration checks.
class CollisionChecker {
public:
    CollisionChecker(const World& world, const ArmModel& arm)
        : world_(&world), arm_(&arm) {}

    bool config(const Config& q) {
        ++config_checks_;
        return config_in_collision(*world_, *arm_, q);
    }

    bool edge(const Config& a, const Config& b, double step);

    long long config_checks() const { return config_checks_; }

private:
    const World* world_;
    const ArmModel* arm_;
    long long config_checks_ = 0;
};

}  // namespace follow

#endif
