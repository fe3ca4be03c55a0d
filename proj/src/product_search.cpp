#include "follow/product_search.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <tuple>

#include "follow/errors.hpp"

namespace follow {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ProductGraph::ProductGraph(const LayeredGraph& lg, const RefGraph& ref, const ArmModel& arm,
                           const MetricWeights& w)
    : lg_(&lg), ref_(&ref), arm_(&arm), metric_(w) {
    for (int lid : lg.order)
        if (lg.layers[lid].verts.empty() && (lid == lg.order.front() || lid == lg.order.back()))
            throw ConstructionError("product graph requires nonempty first and last layers");

    ref_orig2sub_.assign(ref.verts.size(), -1);
    lg_orig2sub_.assign(lg.vertices.size(), -1);
    ref_chain_.resize(ref.edges.size());
    lg_chain_.resize(lg.edges.size());

    for (std::size_t i = 0; i < ref.verts.size(); ++i) mirror_ref_vertex(static_cast<int>(i));
    for (std::size_t e = 0; e < ref.edges.size(); ++e)
        if (ref.edges[e].alive) build_ref_chain(static_cast<int>(e));
    for (std::size_t i = 0; i < lg.vertices.size(); ++i) mirror_lg_vertex(static_cast<int>(i));
    for (std::size_t e = 0; e < lg.edges.size(); ++e)
        if (lg.edges[e].alive) build_lg_chain(static_cast<int>(e));
}

int ProductGraph::new_ref_sub(RefSub s) {
    const int id = static_cast<int>(ref_subs_.size());
    ref_subs_.push_back(std::move(s));
    // New row of costs against every lg sub-vertex.
    std::vector<double> row(lg_subs_.size());
    for (std::size_t q = 0; q < lg_subs_.size(); ++q)
        row[q] = lg_subs_[q].alive
                     ? task_distance(ref_subs_[id].pose, lg_subs_[q].ee, metric_)
                     : kInf;
    cost_.push_back(std::move(row));
    dist_.emplace_back(lg_subs_.size());
    dist_epoch_.emplace_back(lg_subs_.size(), -1);
    settled_.emplace_back(lg_subs_.size(), -1);
    bfs_seen_.emplace_back(lg_subs_.size(), -1);
    bfs_parent_.emplace_back(lg_subs_.size());
    ref_sub_settled_.push_back(-1);
    mark_ref_dirty(id);
    return id;
}

int ProductGraph::new_lg_sub(LgSub s) {
    const int id = static_cast<int>(lg_subs_.size());
    lg_subs_.push_back(std::move(s));
    for (std::size_t r = 0; r < ref_subs_.size(); ++r) {
        cost_[r].push_back(ref_subs_[r].alive
                               ? task_distance(ref_subs_[r].pose, lg_subs_[id].ee, metric_)
                               : kInf);
        dist_[r].emplace_back();
        dist_epoch_[r].push_back(-1);
        settled_[r].push_back(-1);
        bfs_seen_[r].push_back(-1);
        bfs_parent_[r].emplace_back();
    }
    lg_sub_settled_.push_back(-1);
    mark_lg_dirty(id);
    return id;
}

void ProductGraph::mirror_ref_vertex(int ref_vertex_id) {
    if (static_cast<int>(ref_orig2sub_.size()) <= ref_vertex_id)
        ref_orig2sub_.resize(ref_vertex_id + 1, -1);
    RefSub s;
    s.pose = ref_->verts[ref_vertex_id].pose;
    s.parent_vertex = ref_vertex_id;
    ref_orig2sub_[ref_vertex_id] = new_ref_sub(std::move(s));
}

void ProductGraph::mirror_lg_vertex(int lg_vertex_id) {
    if (static_cast<int>(lg_orig2sub_.size()) <= lg_vertex_id)
        lg_orig2sub_.resize(lg_vertex_id + 1, -1);
    LgSub s;
    s.q = lg_->vertices[lg_vertex_id].q;
    s.ee = lg_->vertices[lg_vertex_id].ee;
    s.parent_vertex = lg_vertex_id;
    lg_orig2sub_[lg_vertex_id] = new_lg_sub(std::move(s));
}

void ProductGraph::build_ref_chain(int ref_edge_id) {
    if (static_cast<int>(ref_chain_.size()) <= ref_edge_id) ref_chain_.resize(ref_edge_id + 1);
    const auto& e = ref_->edges[ref_edge_id];
    auto& chain = ref_chain_[ref_edge_id];
    chain.clear();
    const int r = e.resolution;
    for (int i = 1; i <= r; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(r + 1);
        RefSub s;
        s.pose = interpolate_pose(ref_->verts[e.u].pose, ref_->verts[e.v].pose, t);
        s.parent_edge = ref_edge_id;
        s.frac = t;
        s.chain_pos = i - 1;
        chain.push_back(new_ref_sub(std::move(s)));
    }
    mark_chain_region_dirty_ref(ref_edge_id);
}

void ProductGraph::build_lg_chain(int lg_edge_id) {
    if (static_cast<int>(lg_chain_.size()) <= lg_edge_id) lg_chain_.resize(lg_edge_id + 1);
    const auto& e = lg_->edges[lg_edge_id];
    auto& chain = lg_chain_[lg_edge_id];
    chain.clear();
    const int r = e.resolution;
    for (int i = 1; i <= r; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(r + 1);
        LgSub s;
        s.q = interpolate_config(lg_->vertices[e.u].q, lg_->vertices[e.v].q, t);
        s.ee = fk(*arm_, s.q);
        s.parent_edge = lg_edge_id;
        s.frac = t;
        s.chain_pos = i - 1;
        chain.push_back(new_lg_sub(std::move(s)));
    }
    mark_chain_region_dirty_lg(lg_edge_id);
}

void ProductGraph::kill_ref_chain(int ref_edge_id) {
    for (int sid : ref_chain_[ref_edge_id]) ref_subs_[sid].alive = false;
    mark_chain_region_dirty_ref(ref_edge_id);
    ref_chain_[ref_edge_id].clear();
    removed_or_blocked_ = true;
}

void ProductGraph::kill_lg_chain(int lg_edge_id) {
    for (int sid : lg_chain_[lg_edge_id]) lg_subs_[sid].alive = false;
    mark_chain_region_dirty_lg(lg_edge_id);
    lg_chain_[lg_edge_id].clear();
    removed_or_blocked_ = true;
}

void ProductGraph::refine_ref_chain(int ref_edge_id) {
    const auto& e = ref_->edges[ref_edge_id];
    auto& chain = ref_chain_[ref_edge_id];
    const int r_new = e.resolution;  // already bumped to 2r+1 by the ref graph
    mark_chain_region_dirty_ref(ref_edge_id);
    std::vector<int> merged;
    merged.reserve(r_new);
    std::size_t old_i = 0;
    for (int j = 1; j <= r_new; ++j) {
        if (j % 2 == 0) {
            merged.push_back(chain[old_i++]);  // even fractions are the old points
            continue;
        }
        const double t = static_cast<double>(j) / static_cast<double>(r_new + 1);
        RefSub s;
        s.pose = interpolate_pose(ref_->verts[e.u].pose, ref_->verts[e.v].pose, t);
        s.parent_edge = ref_edge_id;
        s.frac = t;
        merged.push_back(new_ref_sub(std::move(s)));
    }
    chain = std::move(merged);
    for (std::size_t i = 0; i < chain.size(); ++i)
        ref_subs_[chain[i]].chain_pos = static_cast<int>(i);
    mark_chain_region_dirty_ref(ref_edge_id);
}

void ProductGraph::refine_lg_chain(int lg_edge_id) {
    const auto& e = lg_->edges[lg_edge_id];
    auto& chain = lg_chain_[lg_edge_id];
    const int r_new = e.resolution;
    mark_chain_region_dirty_lg(lg_edge_id);
    std::vector<int> merged;
    merged.reserve(r_new);
    std::size_t old_i = 0;
    for (int j = 1; j <= r_new; ++j) {
        if (j % 2 == 0) {
            merged.push_back(chain[old_i++]);
            continue;
        }
        const double t = static_cast<double>(j) / static_cast<double>(r_new + 1);
        LgSub s;
        s.q = interpolate_config(lg_->vertices[e.u].q, lg_->vertices[e.v].q, t);
        s.ee = fk(*arm_, s.q);
        s.parent_edge = lg_edge_id;
        s.frac = t;
        merged.push_back(new_lg_sub(std::move(s)));
    }
    chain = std::move(merged);
    for (std::size_t i = 0; i < chain.size(); ++i)
        lg_subs_[chain[i]].chain_pos = static_cast<int>(i);
    mark_chain_region_dirty_lg(lg_edge_id);
}

void ProductGraph::mark_ref_dirty(int ref_sub) { dirty_ref_subs_.push_back(ref_sub); }
void ProductGraph::mark_lg_dirty(int lg_sub) { dirty_lg_subs_.push_back(lg_sub); }

void ProductGraph::mark_chain_region_dirty_lg(int lg_edge_id) {
    const auto& e = lg_->edges[lg_edge_id];
    if (lg_orig2sub_[e.u] >= 0) mark_lg_dirty(lg_orig2sub_[e.u]);
    if (lg_orig2sub_[e.v] >= 0) mark_lg_dirty(lg_orig2sub_[e.v]);
    for (int sid : lg_chain_[lg_edge_id]) mark_lg_dirty(sid);
}

void ProductGraph::mark_chain_region_dirty_ref(int ref_edge_id) {
    const auto& e = ref_->edges[ref_edge_id];
    if (ref_orig2sub_[e.u] >= 0) mark_ref_dirty(ref_orig2sub_[e.u]);
    if (ref_orig2sub_[e.v] >= 0) mark_ref_dirty(ref_orig2sub_[e.v]);
    for (int sid : ref_chain_[ref_edge_id]) mark_ref_dirty(sid);
}

void ProductGraph::apply_change(const ChangeReport& rep) {
    using Kind = ChangeReport::Kind;
    if (rep.kind == Kind::none || rep.failed) return;

    if (rep.kind == Kind::refine) {
        if (rep.refined_lg_edge >= 0) refine_lg_chain(rep.refined_lg_edge);
        if (rep.refined_ref_edge >= 0) refine_ref_chain(rep.refined_ref_edge);
        return;
    }

    // add_layer / add_ik share the vertex+edge machinery.
    for (int eid : rep.removed_lg_edges) kill_lg_chain(eid);
    if (rep.removed_ref_edge >= 0) kill_ref_chain(rep.removed_ref_edge);
    if (rep.added_ref_vertex >= 0) mirror_ref_vertex(rep.added_ref_vertex);
    for (int vid : rep.added_lg_vertices) mirror_lg_vertex(vid);
    for (int eid : rep.added_ref_edges) build_ref_chain(eid);
    for (int eid : rep.added_lg_edges) build_lg_chain(eid);

    if (rep.kind == Kind::add_ik && rep.layer_id >= 0 &&
        (rep.layer_id == lg_->order.front() || rep.layer_id == lg_->order.back()))
        endpoints_changed_ = true;
}

void ProductGraph::note_lg_edge_blocked(int) { removed_or_blocked_ = true; }

std::size_t ProductGraph::alive_ref_count() const {
    std::size_t n = 0;
    for (const auto& s : ref_subs_) n += s.alive ? 1 : 0;
    return n;
}

std::size_t ProductGraph::alive_lg_count() const {
    std::size_t n = 0;
    for (const auto& s : lg_subs_) n += s.alive ? 1 : 0;
    return n;
}

int ProductGraph::first_ref_sub() const { return ref_orig2sub_[ref_->order.front()]; }
int ProductGraph::last_ref_sub() const { return ref_orig2sub_[ref_->order.back()]; }

bool ProductGraph::is_target(int r, int q) const {
    return r == last_ref_sub() && lg_subs_[q].parent_vertex >= 0 &&
           lg_->vertices[lg_subs_[q].parent_vertex].layer == lg_->order.back();
}

bool ProductGraph::is_source(int r, int q) const {
    return r == first_ref_sub() && lg_subs_[q].parent_vertex >= 0 &&
           lg_->vertices[lg_subs_[q].parent_vertex].layer == lg_->order.front();
}

int ProductGraph::ref_next(int ref_sub) const {
    const auto& s = ref_subs_[ref_sub];
    if (s.parent_edge >= 0) {
        const auto& chain = ref_chain_[s.parent_edge];
        if (s.chain_pos + 1 < static_cast<int>(chain.size())) return chain[s.chain_pos + 1];
        return ref_orig2sub_[ref_->edges[s.parent_edge].v];
    }
    // Original waypoint: step into the chain of the edge toward higher alpha.
    const int vid = s.parent_vertex;
    for (int eid : ref_->incident[vid]) {
        const auto& e = ref_->edges[eid];
        if (e.u != vid) continue;  // e.u is always the lower-alpha endpoint
        const auto& chain = ref_chain_[eid];
        return chain.empty() ? ref_orig2sub_[e.v] : chain.front();
    }
    return -1;
}

int ProductGraph::ref_prev(int ref_sub) const {
    const auto& s = ref_subs_[ref_sub];
    if (s.parent_edge >= 0) {
        const auto& chain = ref_chain_[s.parent_edge];
        if (s.chain_pos > 0) return chain[s.chain_pos - 1];
        return ref_orig2sub_[ref_->edges[s.parent_edge].u];
    }
    const int vid = s.parent_vertex;
    for (int eid : ref_->incident[vid]) {
        const auto& e = ref_->edges[eid];
        if (e.v != vid) continue;
        const auto& chain = ref_chain_[eid];
        return chain.empty() ? ref_orig2sub_[e.u] : chain.back();
    }
    return -1;
}

namespace {
/// Direction sense of an inter-layer edge: true when e.u's layer comes
/// earlier along the reference than e.v's.
bool lg_edge_forward_from_u(const LayeredGraph& lg, const LayeredGraph::Edge& e) {
    return lg.layers[lg.vertices[e.u].layer].alpha < lg.layers[lg.vertices[e.v].layer].alpha;
}
}  // namespace

void ProductGraph::lg_moves(int lg_sub, std::vector<int>& out) const {
    out.clear();
    const auto& s = lg_subs_[lg_sub];
    if (s.parent_vertex >= 0) {
        const int vid = s.parent_vertex;
        for (int eid : lg_->incident[vid]) {
            const auto& e = lg_->edges[eid];
            if (e.status == EdgeStatus::blocked) continue;
            const bool from_u = (e.u == vid);
            if (!e.intra) {
                const bool fwd_from_u = lg_edge_forward_from_u(*lg_, e);
                if (from_u != fwd_from_u) continue;  // would regress a layer
            }
            const auto& chain = lg_chain_[eid];
            if (chain.empty())
                out.push_back(lg_orig2sub_[from_u ? e.v : e.u]);
            else
                out.push_back(from_u ? chain.front() : chain.back());
        }
        return;
    }
    const auto& e = lg_->edges[s.parent_edge];
    if (e.status == EdgeStatus::blocked) return;
    const auto& chain = lg_chain_[s.parent_edge];
    const int lower = s.chain_pos > 0 ? chain[s.chain_pos - 1] : lg_orig2sub_[e.u];
    const int upper = s.chain_pos + 1 < static_cast<int>(chain.size()) ? chain[s.chain_pos + 1]
                                                                       : lg_orig2sub_[e.v];
    if (e.intra) {
        out.push_back(lower);
        out.push_back(upper);
    } else if (lg_edge_forward_from_u(*lg_, e)) {
        out.push_back(upper);
    } else {
        out.push_back(lower);
    }
}

void ProductGraph::lg_neighbors_undirected(int lg_sub, std::vector<int>& out) const {
    out.clear();
    const auto& s = lg_subs_[lg_sub];
    if (s.parent_vertex >= 0) {
        const int vid = s.parent_vertex;
        for (int eid : lg_->incident[vid]) {
            const auto& e = lg_->edges[eid];
            if (e.status == EdgeStatus::blocked) continue;
            const bool from_u = (e.u == vid);
            const auto& chain = lg_chain_[eid];
            if (chain.empty())
                out.push_back(lg_orig2sub_[from_u ? e.v : e.u]);
            else
                out.push_back(from_u ? chain.front() : chain.back());
        }
        return;
    }
    const auto& e = lg_->edges[s.parent_edge];
    if (e.status == EdgeStatus::blocked) return;
    const auto& chain = lg_chain_[s.parent_edge];
    out.push_back(s.chain_pos > 0 ? chain[s.chain_pos - 1] : lg_orig2sub_[e.u]);
    out.push_back(s.chain_pos + 1 < static_cast<int>(chain.size()) ? chain[s.chain_pos + 1]
                                                                   : lg_orig2sub_[e.v]);
}

bool ProductGraph::reuse_possible() const {
    if (!have_search_state_ || removed_or_blocked_ || endpoints_changed_) return false;
    for (int q : dirty_lg_subs_)
        if (lg_sub_settled_[q] == epoch_) return false;
    for (int r : dirty_ref_subs_)
        if (ref_sub_settled_[r] == epoch_) return false;
    return true;
}

std::optional<SearchResult> ProductGraph::bottleneck_search() {
    const bool reuse = reuse_possible();
    dirty_lg_subs_.clear();
    dirty_ref_subs_.clear();
    removed_or_blocked_ = false;
    endpoints_changed_ = false;

    if (reuse && target_settled_ && cached_result_) return cached_result_;

    std::priority_queue<PqEntry, std::vector<PqEntry>, std::greater<>> pq;
    if (reuse) {
        for (const auto& f : frontier_) pq.push(f);
    } else {
        ++epoch_;
        const int r0 = first_ref_sub();
        for (int vid : lg_->layers[lg_->order.front()].verts) {
            const int q = lg_orig2sub_[vid];
            const double c = cost_[r0][q];
            dist_[r0][q] = c;
            dist_epoch_[r0][q] = epoch_;
            pq.push(PqEntry{c, r0, q});
        }
    }

    int target_r = -1, target_q = -1;
    double bstar = kInf;
    std::vector<int> moves;
    while (!pq.empty()) {
        const PqEntry top = pq.top();
        pq.pop();
        if (dist_epoch_[top.r][top.q] != epoch_ || top.b != dist_[top.r][top.q]) continue;
        if (settled_[top.r][top.q] == epoch_) continue;
        settled_[top.r][top.q] = epoch_;
        lg_sub_settled_[top.q] = epoch_;
        ref_sub_settled_[top.r] = epoch_;
        if (is_target(top.r, top.q)) {
            target_r = top.r;
            target_q = top.q;
            bstar = top.b;
            break;
        }
        const int rn = ref_next(top.r);
        auto relax = [&](int r, int q) {
            const double nd = std::max(top.b, cost_[r][q]);
            if (dist_epoch_[r][q] != epoch_ || nd < dist_[r][q]) {
                dist_[r][q] = nd;
                dist_epoch_[r][q] = epoch_;
                pq.push(PqEntry{nd, r, q});
            }
        };
        lg_moves(top.q, moves);
        for (int q2 : moves) relax(top.r, q2);
        if (rn >= 0) {
            relax(rn, top.q);
            for (int q2 : moves) relax(rn, q2);
        }
    }

    // Preserve the frontier for possible reuse by the next episode.
    frontier_.clear();
    while (!pq.empty()) {
        const PqEntry e = pq.top();
        pq.pop();
        if (dist_epoch_[e.r][e.q] != epoch_ || e.b != dist_[e.r][e.q]) continue;
        if (settled_[e.r][e.q] == epoch_) continue;
        frontier_.push_back(e);
    }
    have_search_state_ = true;

    if (target_r < 0) {
        target_settled_ = false;
        cached_result_.reset();
        return std::nullopt;
    }
    target_settled_ = true;
    cached_result_ = reconstruct(target_r, target_q, bstar);
    return cached_result_;
}

SearchResult ProductGraph::reconstruct(int target_r, int target_q, double bstar) {
    // Min-hop BFS over the threshold subgraph {cost <= bstar}; any path here
    // has bottleneck exactly bstar, so this realizes the fewer-edges tie rule.
    ++bfs_epoch_;
    std::deque<std::pair<int, int>> queue;
    const int r0 = first_ref_sub();
    for (int vid : lg_->layers[lg_->order.front()].verts) {
        const int q = lg_orig2sub_[vid];
        if (cost_[r0][q] <= bstar) {
            bfs_seen_[r0][q] = bfs_epoch_;
            bfs_parent_[r0][q] = {-1, -1};
            queue.emplace_back(r0, q);
        }
    }
    int tr = -1, tq = -1;
    std::vector<int> moves;
    while (!queue.empty()) {
        const auto [r, q] = queue.front();
        queue.pop_front();
        if (is_target(r, q)) {
            tr = r;
            tq = q;
            break;
        }
        const int rn = ref_next(r);
        auto visit = [&](int r2, int q2) {
            if (cost_[r2][q2] > bstar) return;
            if (bfs_seen_[r2][q2] == bfs_epoch_) return;
            bfs_seen_[r2][q2] = bfs_epoch_;
            bfs_parent_[r2][q2] = {r, q};
            queue.emplace_back(r2, q2);
        };
        lg_moves(q, moves);
        for (int q2 : moves) visit(r, q2);
        if (rn >= 0) {
            visit(rn, q);
            for (int q2 : moves) visit(rn, q2);
        }
    }
    // The phase-1 path lies inside the threshold region, so BFS must succeed.
    if (tr < 0) throw StateError("threshold BFS lost the bottleneck path");
    (void)target_r;
    (void)target_q;

    SearchResult res;
    res.bottleneck_cost = bstar;
    std::vector<ProductVertex> rev;
    int r = tr, q = tq;
    while (r >= 0) {
        rev.push_back(ProductVertex{r, q});
        const auto [pr, pq_] = bfs_parent_[r][q];
        r = pr;
        q = pq_;
    }
    res.product_path.assign(rev.rbegin(), rev.rend());

    int last_lg = -1;
    for (const auto& pv : res.product_path) {
        if (pv.lg_node != last_lg) {
            res.extracted.push_back(lg_subs_[pv.lg_node].q);
            res.extracted_poses.push_back(lg_subs_[pv.lg_node].ee);
            last_lg = pv.lg_node;
        }
    }
    for (std::size_t i = 1; i < res.product_path.size(); ++i) {
        const int eid = lg_move_parent_edge(res.product_path[i - 1], res.product_path[i]);
        if (eid >= 0 &&
            std::find(res.traversed_lg_edges.begin(), res.traversed_lg_edges.end(), eid) ==
                res.traversed_lg_edges.end())
            res.traversed_lg_edges.push_back(eid);
    }
    return res;
}

int ProductGraph::lg_move_parent_edge(const ProductVertex& a, const ProductVertex& b) const {
    if (a.lg_node == b.lg_node) return -1;
    const auto& sa = lg_subs_[a.lg_node];
    const auto& sb = lg_subs_[b.lg_node];
    if (sa.parent_edge >= 0) return sa.parent_edge;
    if (sb.parent_edge >= 0) return sb.parent_edge;
    return lg_->edge_between(sa.parent_vertex, sb.parent_vertex);
}

std::vector<TaskPose> ProductGraph::ref_chain_poses() const {
    std::vector<TaskPose> out;
    for (int r = first_ref_sub(); r >= 0; r = ref_next(r)) out.push_back(ref_subs_[r].pose);
    return out;
}

std::vector<std::pair<ProductVertex, ProductVertex>> ProductGraph::enumerate_edges() const {
    std::vector<std::pair<ProductVertex, ProductVertex>> out;
    auto canon = [](ProductVertex a, ProductVertex b) {
        if (b.ref_node < a.ref_node || (b.ref_node == a.ref_node && b.lg_node < a.lg_node))
            std::swap(a, b);
        return std::make_pair(a, b);
    };
    std::vector<int> nbrs;
    for (int r = 0; r < static_cast<int>(ref_subs_.size()); ++r) {
        if (!ref_subs_[r].alive) continue;
        const int rn = ref_next(r);
        for (int q = 0; q < static_cast<int>(lg_subs_.size()); ++q) {
            if (!lg_subs_[q].alive) continue;
            lg_neighbors_undirected(q, nbrs);
            const ProductVertex here{r, q};
            for (int q2 : nbrs)
                if (q2 > q) out.push_back(canon(here, ProductVertex{r, q2}));
            if (rn >= 0) {
                out.push_back(canon(here, ProductVertex{rn, q}));
                for (int q2 : nbrs) out.push_back(canon(here, ProductVertex{rn, q2}));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return std::tie(x.first.ref_node, x.first.lg_node, x.second.ref_node, x.second.lg_node) <
               std::tie(y.first.ref_node, y.first.lg_node, y.second.ref_node, y.second.lg_node);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& x, const auto& y) {
                              return x.first == y.first && x.second == y.second;
                          }),
              out.end());
    return out;
}

std::optional<SearchResult> lazy_plan(ProductGraph& pg, LayeredGraph& lg,
                                      CollisionChecker& checker, double step) {
    for (;;) {
        auto result = pg.bottleneck_search();
        if (!result) return std::nullopt;
        bool blocked_one = false;
        for (int eid : result->traversed_lg_edges) {
            auto& e = lg.edges[eid];
            if (e.status == EdgeStatus::free) continue;
            if (e.status == EdgeStatus::blocked) {
                // Search never uses blocked edges; seeing one here is a bug.
                throw StateError("blocked edge on a search result");
            }
            const bool hit = checker.edge(lg.vertices[e.u].q, lg.vertices[e.v].q, step);
            if (hit) {
                e.status = EdgeStatus::blocked;
                pg.note_lg_edge_blocked(eid);
                blocked_one = true;
                break;
            }
            e.status = EdgeStatus::free;
        }
        if (!blocked_one) return result;
    }
}

}  // namespace follow
