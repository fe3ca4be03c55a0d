#include "follow/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "follow/errors.hpp"

namespace follow {

namespace {

struct Bounds {
    double xmin = 1e18, xmax = -1e18, ymin = 1e18, ymax = -1e18;
    void add(double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

std::string render_svg(const Scenario& scenario, const RunOutput* solution) {
    Bounds b;
    b.add(scenario.arm.base_pose().x, scenario.arm.base_pose().y);
    for (const auto& p : scenario.reference.points()) b.add(p.x, p.y);
    for (const auto& obs : scenario.world.obstacles()) {
        if (const auto* c = std::get_if<Circle>(&obs.shape)) {
            b.add(c->center.x - c->radius, c->center.y - c->radius);
            b.add(c->center.x + c->radius, c->center.y + c->radius);
        } else {
            for (const auto& v : std::get<ConvexPolygon>(obs.shape).vertices) b.add(v.x, v.y);
        }
    }
    if (solution)
        for (const auto& p : solution->ee_poses) b.add(p.x, p.y);

    const double margin = 0.4;
    b.xmin -= margin;
    b.ymin -= margin;
    b.xmax += margin;
    b.ymax += margin;
    const double w = 800.0;
    const double scale = w / (b.xmax - b.xmin);
    const double h = (b.ymax - b.ymin) * scale;
    auto X = [&](double x) { return (x - b.xmin) * scale; };
    auto Y = [&](double y) { return h - (y - b.ymin) * scale; };  // y up

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\""
       << num(h) << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (const auto& obs : scenario.world.obstacles()) {
        if (const auto* c = std::get_if<Circle>(&obs.shape)) {
            os << "<circle cx=\"" << num(X(c->center.x)) << "\" cy=\"" << num(Y(c->center.y))
               << "\" r=\"" << num(c->radius * scale)
               << "\" fill=\"#b8b8b8\" stroke=\"#7a7a7a\"/>\n";
        } else {
            os << "<polygon points=\"";
            for (const auto& v : std::get<ConvexPolygon>(obs.shape).vertices)
                os << num(X(v.x)) << "," << num(Y(v.y)) << " ";
            os << "\" fill=\"#b8b8b8\" stroke=\"#7a7a7a\"/>\n";
        }
    }

    // Arm snapshots behind the paths.
    if (solution) {
        for (const auto& q : solution->snapshot_configs) {
            if (q.size() != scenario.arm.dof()) continue;
            const auto links = fk_links(scenario.arm, q);
            os << "<polyline points=\"" << num(X(links.front().a.x)) << ","
               << num(Y(links.front().a.y)) << " ";
            for (const auto& seg : links) os << num(X(seg.b.x)) << "," << num(Y(seg.b.y)) << " ";
            os << "\" fill=\"none\" stroke=\"#7aa6c2\" stroke-width=\"2\" "
                  "stroke-opacity=\"0.55\"/>\n";
        }
    }

    os << "<polyline points=\"";
    for (const auto& p : scenario.reference.points())
        os << num(X(p.x)) << "," << num(Y(p.y)) << " ";
    os << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2.5\" stroke-dasharray=\"7,5\"/>\n";
    for (const auto& p : scenario.reference.points())
        os << "<circle cx=\"" << num(X(p.x)) << "\" cy=\"" << num(Y(p.y))
           << "\" r=\"3\" fill=\"black\"/>\n";

    if (solution && !solution->ee_poses.empty()) {
        os << "<polyline points=\"";
        for (const auto& p : solution->ee_poses) os << num(X(p.x)) << "," << num(Y(p.y)) << " ";
        os << "\" fill=\"none\" stroke=\"#d1407e\" stroke-width=\"2.5\"/>\n";
    }

    os << "<circle cx=\"" << num(X(scenario.arm.base_pose().x)) << "\" cy=\""
       << num(Y(scenario.arm.base_pose().y)) << "\" r=\"5\" fill=\"#333333\"/>\n";
    os << "</svg>\n";
    return os.str();
}

void save_svg(const std::string& path, const std::string& svg) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write '" + path + "'");
    f << svg;
}

}  // namespace follow
