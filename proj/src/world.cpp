#include "follow/world.hpp"

#include <algorithm>
#include <cmath>

#include "follow/errors.hpp"

namespace follow {

namespace {
constexpr double kSlack = 1e-12;

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dist(const Point2& a, const Point2& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}
}  // namespace

Obstacle make_circle(double cx, double cy, double r) {
    if (!(r > 0.0)) throw InputError("circle radius must be positive");
    return Obstacle{Circle{{cx, cy}, r}};
}

Obstacle make_polygon(std::vector<Point2> ccw_vertices) {
    if (ccw_vertices.size() < 3) throw InputError("polygon needs at least 3 vertices");
    const std::size_t n = ccw_vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double c = cross(ccw_vertices[i], ccw_vertices[(i + 1) % n],
                               ccw_vertices[(i + 2) % n]);
        if (c < -kSlack) throw InputError("polygon must be convex with CCW vertices");
    }
    return Obstacle{ConvexPolygon{std::move(ccw_vertices)}};
}

Obstacle make_box(double cx, double cy, double half_w, double half_h, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    auto corner = [&](double dx, double dy) {
        return Point2{cx + dx * c - dy * s, cy + dx * s + dy * c};
    };
    return make_polygon({corner(half_w, half_h), corner(-half_w, half_h),
                         corner(-half_w, -half_h), corner(half_w, -half_h)});
}

World::World(std::vector<Obstacle> obstacles, bool self_collision)
    : obstacles_(std::move(obstacles)), self_collision_(self_collision) {}

double point_segment_distance(const Point2& p, const Segment2& s) {
    const double vx = s.b.x - s.a.x, vy = s.b.y - s.a.y;
    const double len2 = vx * vx + vy * vy;
    double t = 0.0;
    if (len2 > 0.0)
        t = std::clamp(((p.x - s.a.x) * vx + (p.y - s.a.y) * vy) / len2, 0.0, 1.0);
    const Point2 proj{s.a.x + t * vx, s.a.y + t * vy};
    return dist(p, proj);
}

double segment_segment_distance(const Segment2& s1, const Segment2& s2) {
    // Proper crossing means distance zero; otherwise the minimum is attained
    // at an endpoint projection.
    const double d1 = cross(s1.a, s1.b, s2.a);
    const double d2 = cross(s1.a, s1.b, s2.b);
    const double d3 = cross(s2.a, s2.b, s1.a);
    const double d4 = cross(s2.a, s2.b, s1.b);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) &&
        d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0)
        return 0.0;
    return std::min(std::min(point_segment_distance(s2.a, s1),
                             point_segment_distance(s2.b, s1)),
                    std::min(point_segment_distance(s1.a, s2),
                             point_segment_distance(s1.b, s2)));
}

bool point_in_polygon(const Point2& p, const ConvexPolygon& poly) {
    const std::size_t n = poly.vertices.size();
    for (std::size_t i = 0; i < n; ++i)
        if (cross(poly.vertices[i], poly.vertices[(i + 1) % n], p) < -kSlack) return false;
    return true;
}

bool segment_hits_obstacle(const Segment2& seg, const Obstacle& obs) {
    if (const auto* c = std::get_if<Circle>(&obs.shape))
        return point_segment_distance(c->center, seg) <= c->radius + kSlack;
    const auto& poly = std::get<ConvexPolygon>(obs.shape);
    if (point_in_polygon(seg.a, poly) || point_in_polygon(seg.b, poly)) return true;
    const std::size_t n = poly.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Segment2 edge{poly.vertices[i], poly.vertices[(i + 1) % n]};
        if (segment_segment_distance(seg, edge) <= kSlack) return true;
    }
    return false;
}

bool config_in_collision(const World& world, const ArmModel& arm, const Config& q) {
    const auto links = fk_links(arm, q);
    for (const auto& link : links)
        for (const auto& obs : world.obstacles())
            if (segment_hits_obstacle(link, obs)) return true;
    if (world.self_collision_enabled()) {
        for (std::size_t i = 0; i + 2 < links.size(); ++i)
            for (std::size_t j = i + 2; j < links.size(); ++j)
                if (segment_segment_distance(links[i], links[j]) <= kSlack) return true;
    }
    return false;
}

bool edge_in_collision(const World& world, const ArmModel& arm, const Config& a,
                       const Config& b, double step) {
    CollisionChecker checker(world, arm);
    return checker.edge(a, b, step);
}

bool CollisionChecker::edge(const Config& a, const Config& b, double step) {
    if (!(step > 0.0)) throw InputError("edge collision step must be positive");
    if (a.size() != b.size()) throw InputError("edge endpoints differ in dimension");
    const double span = config_max_norm(a, b);
    const long m = std::max(1L, static_cast<long>(std::ceil(span / step)));
    if (config(a)) return true;
    for (long i = 1; i <= m; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(m);
        if (config(interpolate_config(a, b, t))) return true;
    }
    return false;
}

}  // namespace follow
