#include "follow/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "follow/errors.hpp"

namespace follow {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ParseError("unknown field '" + it.key() + "'", path);
    }
}

const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError("missing required field", path + "." + key);
    return *it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ParseError("expected a number", path);
    return j.get<double>();
}

TaskPose pose_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3)
        throw ParseError("expected [x, y, theta]", path);
    return TaskPose::make(as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]"),
                          as_number(j[2], path + "[2]"));
}

json pose_to_json(const TaskPose& p) { return json::array({p.x, p.y, p.theta}); }

json config_to_json(const Config& q) {
    json a = json::array();
    for (double v : q.angles) a.push_back(v);
    return a;
}

Config config_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError("expected a joint-angle array", path);
    Config q;
    for (std::size_t i = 0; i < j.size(); ++i)
        q.angles.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
    return q;
}

std::string fmt_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ArmModel arm_from_json(const json& j) {
    check_keys(j, "arm", {"link_lengths", "joint_limits", "base_pose"});
    const auto& jl = require(j, "link_lengths", "arm");
    if (!jl.is_array() || jl.empty()) throw ParseError("expected an array", "arm.link_lengths");
    std::vector<double> links;
    for (std::size_t i = 0; i < jl.size(); ++i)
        links.push_back(as_number(jl[i], "arm.link_lengths[" + std::to_string(i) + "]"));
    if (links.size() < 4)
        throw ParseError("redundancy requires at least 4 links, got " +
                             std::to_string(links.size()),
                         "arm.link_lengths");
    const auto& jj = require(j, "joint_limits", "arm");
    if (!jj.is_array() || jj.size() != links.size())
        throw ParseError("joint_limits must list one [lo, hi] per link", "arm.joint_limits");
    std::vector<JointLimit> limits;
    for (std::size_t i = 0; i < jj.size(); ++i) {
        const std::string p = "arm.joint_limits[" + std::to_string(i) + "]";
        if (!jj[i].is_array() || jj[i].size() != 2) throw ParseError("expected [lo, hi]", p);
        limits.push_back(JointLimit{as_number(jj[i][0], p), as_number(jj[i][1], p)});
    }
    const TaskPose base = pose_from_json(require(j, "base_pose", "arm"), "arm.base_pose");
    try {
        return ArmModel(std::move(links), std::move(limits), base);
    } catch (const InputError& e) {
        throw ParseError(e.what(), "arm");
    }
}

World world_from_json(const json& j) {
    check_keys(j, "world", {"obstacles", "self_collision"});
    std::vector<Obstacle> obstacles;
    if (auto it = j.find("obstacles"); it != j.end()) {
        if (!it->is_array()) throw ParseError("expected an array", "world.obstacles");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string p = "world.obstacles[" + std::to_string(i) + "]";
            const json& o = (*it)[i];
            const auto type = require(o, "type", p).get<std::string>();
            try {
                if (type == "circle") {
                    check_keys(o, p, {"type", "center", "radius"});
                    const json& c = require(o, "center", p);
                    obstacles.push_back(make_circle(as_number(c[0], p + ".center[0]"),
                                                    as_number(c[1], p + ".center[1]"),
                                                    as_number(require(o, "radius", p), p)));
                } else if (type == "polygon") {
                    check_keys(o, p, {"type", "vertices"});
                    const json& vs = require(o, "vertices", p);
                    std::vector<Point2> pts;
                    for (const auto& v : vs)
                        pts.push_back(Point2{as_number(v[0], p), as_number(v[1], p)});
                    obstacles.push_back(make_polygon(std::move(pts)));
                } else {
                    throw ParseError("unknown obstacle type '" + type + "'", p);
                }
            } catch (const InputError& e) {
                throw ParseError(e.what(), p);
            }
        }
    }
    bool self = false;
    if (auto it = j.find("self_collision"); it != j.end()) self = it->get<bool>();
    return World(std::move(obstacles), self);
}

json world_to_json(const World& w) {
    json obstacles = json::array();
    for (const auto& obs : w.obstacles()) {
        if (const auto* c = std::get_if<Circle>(&obs.shape)) {
            obstacles.push_back({{"type", "circle"},
                                 {"center", json::array({c->center.x, c->center.y})},
                                 {"radius", c->radius}});
        } else {
            const auto& poly = std::get<ConvexPolygon>(obs.shape);
            json vs = json::array();
            for (const auto& v : poly.vertices) vs.push_back(json::array({v.x, v.y}));
            obstacles.push_back({{"type", "polygon"}, {"vertices", vs}});
        }
    }
    return {{"obstacles", obstacles}, {"self_collision", w.self_collision_enabled()}};
}

Strategy strategy_from_json(const json& j, const std::string& path) {
    const auto kind = require(j, "kind", path).get<std::string>();
    if (kind == "hybrid") {
        check_keys(j, path, {"kind", "p"});
        return Strategy::hybrid(as_number(require(j, "p", path), path + ".p"));
    }
    if (kind == "ltg" || kind == "local_then_global") {
        check_keys(j, path, {"kind", "m"});
        return Strategy::local_then_global(
            static_cast<int>(as_number(require(j, "m", path), path + ".m")));
    }
    throw ParseError("unknown strategy kind '" + kind + "'", path);
}

json strategy_to_json(const Strategy& s) {
    if (s.kind == Strategy::Kind::hybrid) return {{"kind", "hybrid"}, {"p", s.p}};
    return {{"kind", "ltg"}, {"m", s.m}};
}

}  // namespace

Scenario scenario_from_json(const json& j) {
    check_keys(j, "$", {"arm", "world", "reference_path", "metric", "planner", "seed"});

    auto arm = arm_from_json(require(j, "arm", "$"));
    auto world = world_from_json(require(j, "world", "$"));

    const json& jr = require(j, "reference_path", "$");
    if (!jr.is_array() || jr.size() < 2)
        throw ParseError("reference path needs at least 2 waypoints", "reference_path");
    std::vector<TaskPose> pts;
    for (std::size_t i = 0; i < jr.size(); ++i)
        pts.push_back(pose_from_json(jr[i], "reference_path[" + std::to_string(i) + "]"));

    MetricWeights metric;
    if (auto it = j.find("metric"); it != j.end()) {
        check_keys(*it, "metric", {"w_rot"});
        metric.w_rot = as_number(require(*it, "w_rot", "metric"), "metric.w_rot");
        if (metric.w_rot < 0.0) throw ParseError("w_rot must be nonnegative", "metric.w_rot");
    }

    Polyline reference = [&] {
        try {
            return Polyline(std::move(pts), metric);
        } catch (const InputError& e) {
            throw ParseError(e.what(), "reference_path");
        }
    }();

    PlannerOptions opts;
    Strategy strategy;  // ltg(5) by default
    Budget budget;
    const json& jp = require(j, "planner", "$");
    check_keys(jp, "planner", {"n0", "k0", "r0", "strategy", "edge_collision_step", "budget"});
    opts.n0 = static_cast<int>(as_number(require(jp, "n0", "planner"), "planner.n0"));
    opts.k0 = static_cast<int>(as_number(require(jp, "k0", "planner"), "planner.k0"));
    opts.r0 = static_cast<int>(as_number(require(jp, "r0", "planner"), "planner.r0"));
    if (opts.n0 < 2) throw ParseError("n0 must be >= 2", "planner.n0");
    if (opts.k0 < 1) throw ParseError("k0 must be >= 1", "planner.k0");
    if (opts.r0 < 0) throw ParseError("r0 must be >= 0", "planner.r0");
    if (auto it = jp.find("edge_collision_step"); it != jp.end()) {
        opts.edge_collision_step = as_number(*it, "planner.edge_collision_step");
        if (!(opts.edge_collision_step > 0.0))
            throw ParseError("edge_collision_step must be positive",
                             "planner.edge_collision_step");
    }
    try {
        strategy = strategy_from_json(require(jp, "strategy", "planner"), "planner.strategy");
    } catch (const InputError& e) {
        throw ParseError(e.what(), "planner.strategy");
    }
    if (auto it = jp.find("budget"); it != jp.end()) {
        check_keys(*it, "planner.budget", {"max_iterations", "max_seconds"});
        if (auto i2 = it->find("max_iterations"); i2 != it->end())
            budget.max_iterations =
                static_cast<long long>(as_number(*i2, "planner.budget.max_iterations"));
        if (auto i2 = it->find("max_seconds"); i2 != it->end())
            budget.max_seconds = as_number(*i2, "planner.budget.max_seconds");
    }

    const json& js = require(j, "seed", "$");
    if (!js.is_number_integer() && !js.is_number_unsigned())
        throw ParseError("seed must be an integer", "seed");

    return Scenario{std::move(arm), std::move(world), std::move(reference), metric,
                    opts,           strategy,         budget,               js.get<std::uint64_t>()};
}

json scenario_to_json(const Scenario& s) {
    json ref = json::array();
    for (const auto& p : s.reference.points()) ref.push_back(pose_to_json(p));
    json limits = json::array();
    for (const auto& jl : s.arm.joint_limits()) limits.push_back(json::array({jl.lo, jl.hi}));
    json budget = json::object();
    if (s.budget.max_iterations) budget["max_iterations"] = *s.budget.max_iterations;
    if (s.budget.max_seconds) budget["max_seconds"] = *s.budget.max_seconds;
    json planner = {{"n0", s.planner.n0},
                    {"k0", s.planner.k0},
                    {"r0", s.planner.r0},
                    {"strategy", strategy_to_json(s.strategy)},
                    {"edge_collision_step", s.planner.edge_collision_step},
                    {"budget", budget}};
    return {{"arm",
             {{"link_lengths", s.arm.link_lengths()},
              {"joint_limits", limits},
              {"base_pose", pose_to_json(s.arm.base_pose())}}},
            {"world", world_to_json(s.world)},
            {"reference_path", ref},
            {"metric", {{"w_rot", s.metric.w_rot}}},
            {"planner", planner},
            {"seed", s.seed}};
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("JSON parse error: ") + e.what(), path);
    }
    return scenario_from_json(j);
}

void save_scenario(const std::string& path, const Scenario& s) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write scenario file '" + path + "'");
    out << scenario_to_json(s).dump(2) << "\n";
}

json layered_graph_to_json(const LayeredGraph& lg, const RefGraph& ref) {
    json layers = json::array();
    for (int lid : lg.order) {
        const auto& layer = lg.layers[lid];
        json configs = json::array();
        for (int vid : layer.verts) configs.push_back(config_to_json(lg.vertices[vid].q));
        layers.push_back({{"alpha", layer.alpha},
                          {"waypoint", pose_to_json(layer.waypoint)},
                          {"vertex_ids", layer.verts},
                          {"configs", configs}});
    }
    json edges = json::array();
    for (std::size_t i = 0; i < lg.edges.size(); ++i) {
        const auto& e = lg.edges[i];
        if (!e.alive) continue;
        const char* status = e.status == EdgeStatus::blocked
                                 ? "blocked"
                                 : (e.status == EdgeStatus::free ? "free" : "unknown");
        edges.push_back({{"id", i},
                         {"u", e.u},
                         {"v", e.v},
                         {"intra", e.intra},
                         {"resolution", e.resolution},
                         {"status", status}});
    }
    json ref_edges = json::array();
    for (const auto& e : ref.edges)
        if (e.alive) ref_edges.push_back({{"u", e.u}, {"v", e.v}, {"resolution", e.resolution}});
    return {{"layers", layers}, {"edges", edges}, {"ref_edges", ref_edges}};
}

json run_output_to_json(const RunOutput& out) {
    json configs = json::array();
    for (const auto& q : out.configs) configs.push_back(config_to_json(q));
    json snapshots = json::array();
    for (const auto& q : out.snapshot_configs) snapshots.push_back(config_to_json(q));
    json ee = json::array(), rp = json::array();
    for (const auto& p : out.ee_poses) ee.push_back(pose_to_json(p));
    for (const auto& p : out.ref_poses) rp.push_back(pose_to_json(p));
    json trace = json::array();
    for (const auto& row : out.trace)
        trace.push_back({{"iteration", row.iteration},
                         {"wall_seconds", row.wall_seconds},
                         {"best_frechet", std::isinf(row.best_frechet)
                                              ? json()
                                              : json(row.best_frechet)},
                         {"n_layers", row.n_layers},
                         {"total_ik", row.total_ik},
                         {"max_resolution", row.max_resolution},
                         {"update_kind", row.update_kind},
                         {"method", row.method},
                         {"collision_checks_cum", row.collision_checks_cum}});
    json j = {{"planner", out.planner},
              {"feasible", out.feasible},
              {"frechet_cost", out.feasible ? json(out.frechet_cost) : json()},
              {"bottleneck_cost", out.feasible ? json(out.bottleneck_cost) : json()},
              {"resolution", {{"lg", out.resolution_lg}, {"ref", out.resolution_ref}}},
              {"configs", configs},
              {"snapshot_configs", snapshots},
              {"ee_poses", ee},
              {"ref_poses", rp},
              {"trace", trace}};
    if (!out.feasible) j["failure_reason"] = out.failure_reason;
    if (!out.layered_debug.is_null()) j["layered_graph"] = out.layered_debug;
    return j;
}

RunOutput run_output_from_json(const json& j) {
    RunOutput out;
    out.planner = require(j, "planner", "$").get<std::string>();
    out.feasible = require(j, "feasible", "$").get<bool>();
    const json& fc = require(j, "frechet_cost", "$");
    out.frechet_cost = fc.is_null() ? kInf : fc.get<double>();
    const json& bc = require(j, "bottleneck_cost", "$");
    out.bottleneck_cost = bc.is_null() ? kInf : bc.get<double>();
    const json& res = require(j, "resolution", "$");
    out.resolution_lg = require(res, "lg", "resolution").get<int>();
    out.resolution_ref = require(res, "ref", "resolution").get<int>();
    for (const auto& q : require(j, "configs", "$")) out.configs.push_back(config_from_json(q, "configs"));
    if (auto it = j.find("snapshot_configs"); it != j.end())
        for (const auto& q : *it) out.snapshot_configs.push_back(config_from_json(q, "snapshot_configs"));
    for (const auto& p : require(j, "ee_poses", "$"))
        out.ee_poses.push_back(pose_from_json(p, "ee_poses"));
    for (const auto& p : require(j, "ref_poses", "$"))
        out.ref_poses.push_back(pose_from_json(p, "ref_poses"));
    for (const auto& r : require(j, "trace", "$")) {
        TraceRow row;
        row.iteration = r.at("iteration").get<long long>();
        row.wall_seconds = r.at("wall_seconds").get<double>();
        row.best_frechet = r.at("best_frechet").is_null() ? kInf : r.at("best_frechet").get<double>();
        row.n_layers = r.at("n_layers").get<int>();
        row.total_ik = r.at("total_ik").get<long long>();
        row.max_resolution = r.at("max_resolution").get<int>();
        row.update_kind = r.at("update_kind").get<std::string>();
        row.method = r.at("method").get<std::string>();
        row.collision_checks_cum = r.at("collision_checks_cum").get<long long>();
        out.trace.push_back(std::move(row));
    }
    if (auto it = j.find("failure_reason"); it != j.end())
        out.failure_reason = it->get<std::string>();
    if (auto it = j.find("layered_graph"); it != j.end()) out.layered_debug = *it;
    return out;
}

void save_run_output(const std::string& path, const RunOutput& out) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write '" + path + "'");
    f << run_output_to_json(out).dump(2) << "\n";
}

RunOutput load_run_output(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("JSON parse error: ") + e.what(), path);
    }
    return run_output_from_json(j);
}

std::string trace_to_csv(const Trace& trace) {
    std::ostringstream os;
    os << "iteration,wall_seconds,best_frechet,n_layers,total_ik,max_resolution,"
          "update_kind,method,collision_checks_cum\n";
    for (const auto& r : trace) {
        os << r.iteration << ',' << fmt_double(r.wall_seconds) << ','
           << fmt_double(r.best_frechet) << ',' << r.n_layers << ',' << r.total_ik << ','
           << r.max_resolution << ',' << r.update_kind << ',' << r.method << ','
           << r.collision_checks_cum << '\n';
    }
    return os.str();
}

void save_trace_csv(const std::string& path, const Trace& trace) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write '" + path + "'");
    f << trace_to_csv(trace);
}

RunOutput run_frechet_planner(const Scenario& s) {
    RunOutput out;
    out.planner = "frechet";
    try {
        Planner planner(s.arm, s.world, s.reference, s.metric, s.planner, s.strategy, s.seed);
        const long long max_iters = s.budget.max_iterations
                                        ? *s.budget.max_iterations
                                        : std::numeric_limits<long long>::max();
        while (planner.iterations_done() < max_iters) {
            if (s.budget.max_seconds && planner.elapsed_seconds() >= *s.budget.max_seconds)
                break;
            planner.step();
        }
        out.trace = planner.trace();
        out.resolution_lg = planner.layered().max_resolution();
        out.resolution_ref = planner.ref_graph().max_resolution();
        out.layered_debug = layered_graph_to_json(planner.layered(), planner.ref_graph());
        if (planner.best()) {
            const auto& best = *planner.best();
            out.feasible = true;
            out.bottleneck_cost = best.bottleneck_cost;
            out.frechet_cost = best.bottleneck_cost;
            out.configs = best.extracted;
            out.ee_poses = best.extracted_poses;
            out.ref_poses = planner.product().ref_chain_poses();
            for (const auto& pv : best.product_path) {
                const auto& qs = planner.product().lg_subs()[pv.lg_node];
                if (qs.parent_vertex >= 0 &&
                    (out.snapshot_configs.empty() ||
                     config_distance(out.snapshot_configs.back(), qs.q) > 0.0))
                    out.snapshot_configs.push_back(qs.q);
            }
        } else {
            out.feasible = false;
            out.failure_reason = "no collision-free path in the densified structures";
        }
    } catch (const ConstructionError& e) {
        out.feasible = false;
        out.failure_reason = e.what();
    }
    return out;
}

RunOutput run_baseline_planner(const Scenario& s, const std::string& which) {
    BaselineParams params;
    params.n_waypoints = s.planner.n0;
    params.edge_collision_step = s.planner.edge_collision_step;
    params.ik = s.planner.ik;
    RandomEngine rng(s.seed);
    BaselineResult res;
    if (which == "greedy-ik")
        res = greedy_ik_plan(s.arm, s.world, s.reference, s.metric, params, rng);
    else if (which == "vector-field")
        res = vector_field_plan(s.arm, s.world, s.reference, s.metric, params, rng);
    else
        throw InputError("unknown baseline planner '" + which + "'");

    RunOutput out;
    out.planner = which;
    out.feasible = res.ok();
    out.resolution_lg = params.report_resolution;
    out.resolution_ref = params.report_resolution;
    TraceRow row;
    row.iteration = 0;
    row.wall_seconds = res.wall_seconds;
    row.best_frechet = res.ok() ? res.frechet_cost : kInf;
    row.n_layers = params.n_waypoints;
    row.total_ik = static_cast<long long>(res.path.size());
    row.max_resolution = params.report_resolution;
    row.update_kind = "init";
    row.method = "init";
    row.collision_checks_cum = 0;
    out.trace.push_back(std::move(row));
    if (res.ok()) {
        out.frechet_cost = res.frechet_cost;
        out.bottleneck_cost = res.frechet_cost;
        out.configs = res.path;
        out.snapshot_configs = res.path;
        // Reproduce the scored pose sequences so the stored cost can be
        // recomputed from the file alone.
        out.ee_poses.push_back(fk(s.arm, res.path.front()));
        for (std::size_t i = 1; i < res.path.size(); ++i) {
            for (int k = 1; k <= params.report_resolution; ++k) {
                const double t = static_cast<double>(k) /
                                 static_cast<double>(params.report_resolution + 1);
                out.ee_poses.push_back(
                    fk(s.arm, interpolate_config(res.path[i - 1], res.path[i], t)));
            }
            out.ee_poses.push_back(fk(s.arm, res.path[i]));
        }
        const Polyline ref_fine = subdivide(s.reference, params.report_resolution);
        out.ref_poses = ref_fine.points();
    } else {
        out.failure_reason = to_string(res.failure);
        if (res.failure_index >= 0)
            out.failure_reason += "(" + std::to_string(res.failure_index) + ")";
    }
    return out;
}

namespace {

/// Chaikin corner cutting, preserving endpoints.
std::vector<TaskPose> chaikin(const std::vector<TaskPose>& pts, int rounds) {
    std::vector<TaskPose> cur = pts;
    for (int r = 0; r < rounds; ++r) {
        std::vector<TaskPose> next;
        next.push_back(cur.front());
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            next.push_back(interpolate_pose(cur[i], cur[i + 1], 0.25));
            next.push_back(interpolate_pose(cur[i], cur[i + 1], 0.75));
        }
        next.push_back(cur.back());
        cur = std::move(next);
    }
    return cur;
}

/// Tangent headings along a positional polyline.
void assign_tangent_thetas(std::vector<TaskPose>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::size_t a = i == 0 ? 0 : i - 1;
        const std::size_t b = i + 1 < pts.size() ? i + 1 : i;
        pts[i].theta = normalize_angle(std::atan2(pts[b].y - pts[a].y, pts[b].x - pts[a].x));
    }
}

ArmModel default_arm() {
    return ArmModel({1.0, 1.0, 1.0, 1.0},
                    {JointLimit{-M_PI, M_PI}, JointLimit{-M_PI, M_PI},
                     JointLimit{-M_PI, M_PI}, JointLimit{-M_PI, M_PI}},
                    TaskPose{0.0, 0.0, 0.0});
}

}  // namespace

Scenario make_random_scenario(std::uint64_t seed, const GenParams& params) {
    ArmModel arm = default_arm();
    RandomEngine rng(seed ^ 0x5ca1ab1eULL);
    const double reach = arm.total_reach();

    for (int attempt = 0; attempt < 64; ++attempt) {
        // Smoothed random path inside the comfortable part of the annulus.
        const double phi0 = rng.uniform(0.0, 2.0 * M_PI);
        const double extent = rng.uniform(0.5, 1.2);
        std::vector<TaskPose> ctrl;
        for (int i = 0; i < params.path_control_points; ++i) {
            const double t = static_cast<double>(i) / (params.path_control_points - 1);
            const double phi = phi0 + extent * t + rng.uniform(-0.06, 0.06);
            // Radius range keeps the wrist point (one link back along any
            // tangent) inside the 3-link sub-reach.
            const double rad = rng.uniform(0.4, 0.65) * reach;
            ctrl.push_back(TaskPose{rad * std::cos(phi), rad * std::sin(phi), 0.0});
        }
        auto pts = chaikin(ctrl, 2);
        assign_tangent_thetas(pts);
        Polyline reference(pts);

        std::vector<Obstacle> obstacles;
        for (int i = 0; i < params.n_obstacles; ++i) {
            const double along = rng.uniform(0.1, 0.9);
            const TaskPose anchor = reference.pose_at(along);
            const double side = rng.bernoulli(0.5) ? 1.0 : -1.0;
            const double off = side * rng.uniform(params.obstacle_offset_min,
                                                  params.obstacle_offset_max);
            const double nx = -std::sin(anchor.theta), ny = std::cos(anchor.theta);
            const double hw = rng.uniform(params.obstacle_half_min, params.obstacle_half_max);
            const double hh = rng.uniform(params.obstacle_half_min, params.obstacle_half_max);
            obstacles.push_back(make_box(anchor.x + off * nx, anchor.y + off * ny, hw, hh,
                                         rng.uniform(0.0, M_PI)));
        }
        World world(std::move(obstacles));

        // Endpoint feasibility probe: some IK solution must exist and be
        // collision-free at both ends.
        bool ok = true;
        RandomEngine probe = rng.split();
        for (double alpha : {0.0, 1.0}) {
            auto sols = sample_ik(arm, reference.pose_at(alpha), 8, probe);
            bool anyfree = false;
            for (const auto& q : sols)
                if (!config_in_collision(world, arm, q)) anyfree = true;
            if (!anyfree) ok = false;
        }
        if (!ok) continue;

        Scenario s{std::move(arm), std::move(world), std::move(reference),
                   MetricWeights{}, PlannerOptions{}, Strategy::local_then_global(5),
                   Budget{},        seed};
        s.budget.max_iterations = params.budget_iterations;
        return s;
    }
    throw ConstructionError("could not generate a feasible random scenario for seed " +
                            std::to_string(seed));
}

Scenario make_straight_line_scenario() {
    ArmModel arm = default_arm();
    std::vector<TaskPose> pts = {TaskPose::make(2.0, -0.9, M_PI / 2),
                                 TaskPose::make(2.0, 0.0, M_PI / 2),
                                 TaskPose::make(2.0, 0.9, M_PI / 2)};
    Scenario s{std::move(arm), World{},  Polyline(pts), MetricWeights{},
               PlannerOptions{}, Strategy::local_then_global(5), Budget{}, 1};
    s.budget.max_iterations = 60;
    return s;
}

std::vector<Scenario> make_myopic_corpus() {
    std::vector<Scenario> out;
    // A straight pull across the workspace with a small disc placed under
    // the early part of the trace: servoing from the first IK branch sweeps
    // the elbow through the disc, while other branches clear it.
    struct Variant {
        double cy;
        double r;
        double x0;
    };
    const Variant variants[] = {
        {1.45, 0.22, 2.2}, {1.30, 0.20, 2.3}, {1.55, 0.24, 2.1},
        {1.40, 0.18, 2.25}, {1.50, 0.21, 2.15},
    };
    int idx = 0;
    for (const auto& v : variants) {
        ArmModel arm = default_arm();
        std::vector<TaskPose> pts = {TaskPose::make(v.x0, -0.8, M_PI / 2),
                                     TaskPose::make(v.x0, 0.0, M_PI / 2),
                                     TaskPose::make(v.x0, 0.8, M_PI / 2)};
        World world({make_circle(v.x0 - 1.0, v.cy, v.r)});
        Scenario s{std::move(arm), std::move(world), Polyline(pts), MetricWeights{},
                   PlannerOptions{}, Strategy::local_then_global(5), Budget{},
                   static_cast<std::uint64_t>(100 + idx)};
        s.budget.max_iterations = 80;
        out.push_back(std::move(s));
        ++idx;
    }
    return out;
}

Scenario make_walled_goal_scenario() {
    ArmModel arm = default_arm();
    std::vector<TaskPose> pts = {TaskPose::make(2.2, -0.8, M_PI / 2),
                                 TaskPose::make(2.2, 0.8, M_PI / 2)};
    // Box the goal end of the path in completely.
    World world({make_box(2.2, 0.8, 0.6, 0.6, 0.0)});
    Scenario s{std::move(arm), std::move(world), Polyline(pts), MetricWeights{},
               PlannerOptions{}, Strategy::local_then_global(5), Budget{}, 7};
    s.budget.max_iterations = 10;
    return s;
}

}  // namespace follow
