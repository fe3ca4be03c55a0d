#include "follow/layered_graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "follow/errors.hpp"

namespace follow {

int LayeredGraph::layer_position(int layer_id) const {
    for (std::size_t i = 0; i < order.size(); ++i)
        if (order[i] == layer_id) return static_cast<int>(i);
    return -1;
}

std::size_t LayeredGraph::alive_edge_count() const {
    std::size_t n = 0;
    for (const auto& e : edges) n += e.alive ? 1 : 0;
    return n;
}

std::size_t LayeredGraph::inter_edge_count() const {
    std::size_t n = 0;
    for (const auto& e : edges) n += (e.alive && !e.intra) ? 1 : 0;
    return n;
}

std::size_t LayeredGraph::intra_edge_count() const {
    std::size_t n = 0;
    for (const auto& e : edges) n += (e.alive && e.intra) ? 1 : 0;
    return n;
}

int LayeredGraph::max_resolution() const {
    int r = 0;
    for (const auto& e : edges)
        if (e.alive) r = std::max(r, e.resolution);
    return r;
}

int LayeredGraph::edge_between(int u, int v) const {
    for (int eid : incident[u]) {
        const auto& e = edges[eid];
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return eid;
    }
    return -1;
}

std::size_t RefGraph::alive_edge_count() const {
    std::size_t n = 0;
    for (const auto& e : edges) n += e.alive ? 1 : 0;
    return n;
}

int RefGraph::max_resolution() const {
    int r = 0;
    for (const auto& e : edges)
        if (e.alive) r = std::max(r, e.resolution);
    return r;
}

int RefGraph::edge_between(int u, int v) const {
    for (int eid : incident[u]) {
        const auto& e = edges[eid];
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return eid;
    }
    return -1;
}

int RefGraph::edge_containing(double alpha) const {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        if (e.alive && verts[e.u].alpha < alpha && alpha < verts[e.v].alpha)
            return static_cast<int>(i);
    }
    return -1;
}

namespace {

int add_vertex(LayeredGraph& lg, int layer_id, Config q, const TaskPose& ee) {
    const int id = static_cast<int>(lg.vertices.size());
    lg.vertices.push_back(LayeredGraph::Vertex{std::move(q), ee, layer_id});
    lg.incident.emplace_back();
    lg.layers[layer_id].verts.push_back(id);
    return id;
}

int add_edge(LayeredGraph& lg, int u, int v, bool intra, int r0) {
    const int id = static_cast<int>(lg.edges.size());
    lg.edges.push_back(LayeredGraph::Edge{u, v, intra, r0, EdgeStatus::unknown, true});
    lg.incident[u].push_back(id);
    lg.incident[v].push_back(id);
    return id;
}

void remove_edge(LayeredGraph& lg, int eid) {
    auto& e = lg.edges[eid];
    e.alive = false;
    auto scrub = [&](int vtx) {
        auto& inc = lg.incident[vtx];
        inc.erase(std::remove(inc.begin(), inc.end(), eid), inc.end());
    };
    scrub(e.u);
    scrub(e.v);
}

/// Wire a fresh vertex into its layer and both neighboring layers.
void wire_vertex(LayeredGraph& lg, int vid, int r0, std::vector<int>& added_edges) {
    const int layer_id = lg.vertices[vid].layer;
    const int pos = lg.layer_position(layer_id);
    for (int other : lg.layers[layer_id].verts)
        if (other != vid) added_edges.push_back(add_edge(lg, other, vid, true, r0));
    for (int npos : {pos - 1, pos + 1}) {
        if (npos < 0 || npos >= static_cast<int>(lg.order.size())) continue;
        for (int other : lg.layers[lg.order[npos]].verts)
            added_edges.push_back(add_edge(lg, other, vid, false, r0));
    }
}

std::vector<Config> layer_ik(const LayeredGraph& lg, int layer_id, int count,
                             const ArmModel& arm, RandomEngine& rng,
                             const LayeredParams& params) {
    auto sols = sample_ik(arm, lg.layers[layer_id].waypoint, count, rng, params.ik);
    // Dedupe against configurations already present in the layer.
    std::vector<Config> fresh;
    for (auto& s : sols) {
        bool dup = false;
        for (int vid : lg.layers[layer_id].verts)
            if (config_distance(s, lg.vertices[vid].q) <= params.ik.distinct_eps) {
                dup = true;
                break;
            }
        if (!dup) fresh.push_back(std::move(s));
    }
    return fresh;
}

int insert_ref_vertex(RefGraph& ref, const TaskPose& pose, double alpha) {
    const int id = static_cast<int>(ref.verts.size());
    ref.verts.push_back(RefGraph::Vertex{pose, alpha});
    ref.incident.emplace_back();
    auto it = std::upper_bound(ref.order.begin(), ref.order.end(), alpha,
                               [&](double a, int vid) { return a < ref.verts[vid].alpha; });
    ref.order.insert(it, id);
    return id;
}

int add_ref_edge(RefGraph& ref, int u, int v, int r0) {
    const int id = static_cast<int>(ref.edges.size());
    ref.edges.push_back(RefGraph::Edge{u, v, r0, true});
    ref.incident[u].push_back(id);
    ref.incident[v].push_back(id);
    return id;
}

void remove_ref_edge(RefGraph& ref, int eid) {
    auto& e = ref.edges[eid];
    e.alive = false;
    auto scrub = [&](int vtx) {
        auto& inc = ref.incident[vtx];
        inc.erase(std::remove(inc.begin(), inc.end(), eid), inc.end());
    };
    scrub(e.u);
    scrub(e.v);
}

int insert_layer_record(LayeredGraph& lg, double alpha, const TaskPose& waypoint) {
    const int id = static_cast<int>(lg.layers.size());
    lg.layers.push_back(LayeredGraph::Layer{alpha, waypoint, {}});
    auto it = std::upper_bound(lg.order.begin(), lg.order.end(), alpha,
                               [&](double a, int lid) { return a < lg.layers[lid].alpha; });
    lg.order.insert(it, id);
    return id;
}

}  // namespace

BuildResult build_layered(const Polyline& reference, int n, int k, const ArmModel& arm,
                          RandomEngine& rng, const LayeredParams& params) {
    if (n < 2) throw InputError("build_layered needs n >= 2 layers");
    if (k < 1) throw InputError("build_layered needs k >= 1");

    BuildResult out;
    LayeredGraph& lg = out.lg;
    RefGraph& ref = out.ref;

    for (int j = 0; j < n; ++j) {
        const double alpha = static_cast<double>(j) / static_cast<double>(n - 1);
        const TaskPose w = reference.pose_at(alpha);
        const int layer_id = insert_layer_record(lg, alpha, w);
        insert_ref_vertex(ref, w, alpha);
        auto sols = layer_ik(lg, layer_id, k, arm, rng, params);
        for (auto& q : sols) {
            const TaskPose ee = fk(arm, q);
            std::vector<int> dummy;
            const int vid = add_vertex(lg, layer_id, std::move(q), ee);
            wire_vertex(lg, vid, params.r0, dummy);
        }
        if ((j == 0 || j == n - 1) && lg.layers[layer_id].verts.empty())
            throw ConstructionError(j == 0 ? "no IK solution at the first reference waypoint"
                                           : "no IK solution at the last reference waypoint");
    }
    for (int j = 0; j + 1 < n; ++j) add_ref_edge(ref, j, j + 1, params.r0);

    check_structure(lg, ref, arm, params.ik.tolerance);
    return out;
}

ChangeReport add_layer(LayeredGraph& lg, RefGraph& ref, const Polyline& reference,
                       double alpha, int k, const ArmModel& arm, RandomEngine& rng,
                       const LayeredParams& params) {
    ChangeReport rep;
    rep.kind = ChangeReport::Kind::add_layer;
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InputError("add_layer alpha must lie strictly inside (0,1)");
    for (const auto& layer : lg.layers)
        if (layer.alpha == alpha)
            throw InputError("add_layer alpha equals an existing layer parameter");

    const TaskPose w = reference.pose_at(alpha);
    // Probe IK before touching anything: an empty layer must be a no-op.
    auto sols = sample_ik(arm, w, k, rng, params.ik);
    if (sols.empty()) {
        rep.failed = true;
        return rep;
    }

    const int split_edge = ref.edge_containing(alpha);
    const int layer_id = insert_layer_record(lg, alpha, w);
    rep.layer_id = layer_id;
    const int pos = lg.layer_position(layer_id);
    const int left_layer = lg.order[pos - 1];
    const int right_layer = lg.order[pos + 1];

    // Bypassed inter-layer edges between the former neighbors go away.
    for (std::size_t eid = 0; eid < lg.edges.size(); ++eid) {
        const auto& e = lg.edges[eid];
        if (!e.alive || e.intra) continue;
        const int lu = lg.vertices[e.u].layer;
        const int lv = lg.vertices[e.v].layer;
        if ((lu == left_layer && lv == right_layer) || (lu == right_layer && lv == left_layer))
            rep.removed_lg_edges.push_back(static_cast<int>(eid));
    }
    for (int eid : rep.removed_lg_edges) remove_edge(lg, eid);

    for (auto& q : sols) {
        const TaskPose ee = fk(arm, q);
        const int vid = add_vertex(lg, layer_id, std::move(q), ee);
        rep.added_lg_vertices.push_back(vid);
        wire_vertex(lg, vid, params.r0, rep.added_lg_edges);
    }

    // Split the reference edge at the new waypoint.
    const int rv = insert_ref_vertex(ref, w, alpha);
    rep.added_ref_vertex = rv;
    const auto edge = ref.edges[split_edge];
    remove_ref_edge(ref, split_edge);
    rep.removed_ref_edge = split_edge;
    rep.added_ref_edges.push_back(add_ref_edge(ref, edge.u, rv, params.r0));
    rep.added_ref_edges.push_back(add_ref_edge(ref, rv, edge.v, params.r0));

    check_structure(lg, ref, arm, params.ik.tolerance);
    return rep;
}

ChangeReport add_ik_samples(LayeredGraph& lg, const RefGraph& ref, int layer_id, int extra,
                            const ArmModel& arm, RandomEngine& rng,
                            const LayeredParams& params) {
    if (layer_id < 0 || layer_id >= static_cast<int>(lg.layers.size()))
        throw InputError("add_ik_samples: no such layer");
    ChangeReport rep;
    rep.kind = ChangeReport::Kind::add_ik;
    rep.layer_id = layer_id;
    auto fresh = layer_ik(lg, layer_id, extra, arm, rng, params);
    for (auto& q : fresh) {
        const TaskPose ee = fk(arm, q);
        const int vid = add_vertex(lg, layer_id, std::move(q), ee);
        rep.added_lg_vertices.push_back(vid);
        wire_vertex(lg, vid, params.r0, rep.added_lg_edges);
    }
    check_structure(lg, ref, arm, params.ik.tolerance);
    return rep;
}

ChangeReport refine_lg_edge(LayeredGraph& lg, int edge_id) {
    if (edge_id < 0 || edge_id >= static_cast<int>(lg.edges.size()) || !lg.edges[edge_id].alive)
        throw InputError("refine_lg_edge: no such edge");
    ChangeReport rep;
    rep.kind = ChangeReport::Kind::refine;
    lg.edges[edge_id].resolution = 2 * lg.edges[edge_id].resolution + 1;
    rep.refined_lg_edge = edge_id;
    return rep;
}

ChangeReport refine_ref_edge(RefGraph& ref, int edge_id) {
    if (edge_id < 0 || edge_id >= static_cast<int>(ref.edges.size()) || !ref.edges[edge_id].alive)
        throw InputError("refine_ref_edge: no such edge");
    ChangeReport rep;
    rep.kind = ChangeReport::Kind::refine;
    ref.edges[edge_id].resolution = 2 * ref.edges[edge_id].resolution + 1;
    rep.refined_ref_edge = edge_id;
    return rep;
}

void check_structure(const LayeredGraph& lg, const RefGraph& ref, const ArmModel& arm,
                     double ik_eps) {
    const std::size_t nlayers = lg.order.size();
    if (nlayers != lg.layers.size()) throw StateError("layer order incomplete");
    if (ref.order.size() != nlayers) throw StateError("ref graph misaligned with layers");

    for (std::size_t i = 0; i + 1 < nlayers; ++i)
        if (!(lg.layers[lg.order[i]].alpha < lg.layers[lg.order[i + 1]].alpha))
            throw StateError("layer alphas not strictly increasing");
    for (std::size_t i = 0; i < nlayers; ++i)
        if (ref.verts[ref.order[i]].alpha != lg.layers[lg.order[i]].alpha)
            throw StateError("ref vertex alphas differ from layer alphas");

    const MetricWeights w;
    for (std::size_t i = 0; i < lg.vertices.size(); ++i) {
        const auto& v = lg.vertices[i];
        if (task_distance(fk(arm, v.q), lg.layers[v.layer].waypoint, w) > ik_eps)
            throw StateError("config does not round-trip to its layer waypoint");
    }

    // Edge set must be exactly: complete bipartite between consecutive
    // layers, complete within each layer.
    std::set<std::pair<int, int>> expected;
    auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
    for (std::size_t i = 0; i < nlayers; ++i) {
        const auto& verts = lg.layers[lg.order[i]].verts;
        for (std::size_t a = 0; a < verts.size(); ++a)
            for (std::size_t b = a + 1; b < verts.size(); ++b)
                expected.insert(key(verts[a], verts[b]));
        if (i + 1 < nlayers)
            for (int u : verts)
                for (int v : lg.layers[lg.order[i + 1]].verts) expected.insert(key(u, v));
    }
    std::set<std::pair<int, int>> actual;
    for (const auto& e : lg.edges) {
        if (!e.alive) continue;
        if (e.resolution < 0) throw StateError("negative edge resolution");
        if (!actual.insert(key(e.u, e.v)).second) throw StateError("duplicate edge");
        const bool same_layer = lg.vertices[e.u].layer == lg.vertices[e.v].layer;
        if (same_layer != e.intra) throw StateError("edge intra flag inconsistent");
    }
    if (actual != expected) throw StateError("edge set deviates from the layered prescription");

    // Reference side must be a path over the alpha order.
    std::size_t alive = 0;
    for (const auto& e : ref.edges) {
        if (!e.alive) continue;
        ++alive;
        const int pu = static_cast<int>(std::find(ref.order.begin(), ref.order.end(), e.u) -
                                        ref.order.begin());
        const int pv = static_cast<int>(std::find(ref.order.begin(), ref.order.end(), e.v) -
                                        ref.order.begin());
        if (pv != pu + 1) throw StateError("ref edge does not connect consecutive waypoints");
    }
    if (alive + 1 != ref.order.size()) throw StateError("ref graph is not a path");
}

}  // namespace follow
