#ifndef FOLLOW_PRODUCT_SEARCH_HPP
#define FOLLOW_PRODUCT_SEARCH_HPP

#include <optional>
#include <utility>
#include <vector>

#include "follow/layered_graph.hpp"
#include "follow/world.hpp"

namespace follow {

/// Vertex of the cross-product graph: a pair of ids into the subdivided
/// reference complex and the subdivided layered complex.
struct ProductVertex {
    int ref_node = -1;
    int lg_node = -1;
    bool operator==(const ProductVertex&) const = default;
};

struct SearchResult {
    std::vector<ProductVertex> product_path;
    double bottleneck_cost = 0.0;
    /// lg components of the path with consecutive duplicates collapsed.
    std::vector<Config> extracted;
    /// FK poses of `extracted`, cached for scoring and output.
    std::vector<TaskPose> extracted_poses;
    /// Original layered-graph edges the path traverses, in first-traversal
    /// order (deduplicated). These are what lazy collision checking probes.
    std::vector<int> traversed_lg_edges;
};

/// Cross-product of the subdivided reference complex and the subdivided
/// layered complex, with per-vertex costs d_TS(w, FK(q)). Maintained
/// incrementally by apply_change; bottleneck_search may reuse settled search
/// state from the previous episode when the mutated region was never settled.
///
/// Traversal is monotone: the reference component only advances, and
/// inter-layer moves only go toward the later layer (intra-layer moves are
/// free-form). Owned by a single planner; not thread-safe for mutation.
class ProductGraph {
public:
    ProductGraph(const LayeredGraph& lg, const RefGraph& ref, const ArmModel& arm,
                 const MetricWeights& w);

    /// Fold a layered-graph/ref-graph mutation into the product structures.
    void apply_change(const ChangeReport& rep);

    /// Note that an lg edge was just marked blocked; its product images stop
    /// being traversable immediately (adjacency consults live edge status).
    void note_lg_edge_blocked(int lg_edge_id);

    /// Minimum-bottleneck path from any (first waypoint, first-layer config)
    /// to any (last waypoint, last-layer config). Ties resolve to fewer
    /// edges, then by the deterministic exploration order. nullopt when no
    /// connection exists.
    std::optional<SearchResult> bottleneck_search();

    // --- introspection (tests, oracles, densification, rendering) ---

    struct RefSub {
        TaskPose pose;
        int parent_vertex = -1;  // original ref vertex id, or -1 for interiors
        int parent_edge = -1;
        double frac = 0.0;
        int chain_pos = -1;
        bool alive = true;
    };
    struct LgSub {
        Config q;
        TaskPose ee;
        int parent_vertex = -1;
        int parent_edge = -1;
        double frac = 0.0;
        int chain_pos = -1;
        bool alive = true;
    };

    const std::vector<RefSub>& ref_subs() const { return ref_subs_; }
    const std::vector<LgSub>& lg_subs() const { return lg_subs_; }
    const LayeredGraph& lg() const { return *lg_; }
    const RefGraph& ref() const { return *ref_; }
    const MetricWeights& metric() const { return metric_; }

    double vertex_cost(int ref_sub, int lg_sub) const { return cost_[ref_sub][lg_sub]; }
    std::size_t alive_ref_count() const;
    std::size_t alive_lg_count() const;
    /// |V_phi| over alive sub-vertices.
    std::size_t product_vertex_count() const { return alive_ref_count() * alive_lg_count(); }

    int ref_sub_of(int ref_vertex_id) const { return ref_orig2sub_[ref_vertex_id]; }
    int lg_sub_of(int lg_vertex_id) const { return lg_orig2sub_[lg_vertex_id]; }

    /// Original lg edge on which a product move (a -> b) rides, or -1 if the
    /// lg component stayed put.
    int lg_move_parent_edge(const ProductVertex& a, const ProductVertex& b) const;

    /// The subdivided reference discretization, walked first-to-last. This is
    /// the pose sequence search results are scored against.
    std::vector<TaskPose> ref_chain_poses() const;

    /// All undirected product edges, canonically ordered. Quadratic-ish;
    /// intended for oracles and small instances.
    std::vector<std::pair<ProductVertex, ProductVertex>> enumerate_edges() const;

private:
    struct PqEntry {
        double b;
        int r, q;
        bool operator>(const PqEntry& o) const {
            if (b != o.b) return b > o.b;
            if (r != o.r) return r > o.r;
            return q > o.q;
        }
    };

    void mirror_ref_vertex(int ref_vertex_id);
    void mirror_lg_vertex(int lg_vertex_id);
    void build_ref_chain(int ref_edge_id);
    void build_lg_chain(int lg_edge_id);
    void kill_ref_chain(int ref_edge_id);
    void kill_lg_chain(int lg_edge_id);
    void refine_ref_chain(int ref_edge_id);
    void refine_lg_chain(int lg_edge_id);
    int new_ref_sub(RefSub s);
    int new_lg_sub(LgSub s);
    void mark_ref_dirty(int ref_sub);
    void mark_lg_dirty(int lg_sub);
    void mark_chain_region_dirty_lg(int lg_edge_id);
    void mark_chain_region_dirty_ref(int ref_edge_id);

    int ref_next(int ref_sub) const;
    int ref_prev(int ref_sub) const;
    /// Forward-allowed lg moves from a sub-vertex (blocked edges skipped).
    void lg_moves(int lg_sub, std::vector<int>& out) const;
    /// All lg neighbors ignoring direction (still skipping blocked edges).
    void lg_neighbors_undirected(int lg_sub, std::vector<int>& out) const;

    bool is_source(int r, int q) const;
    bool is_target(int r, int q) const;
    int first_ref_sub() const;
    int last_ref_sub() const;

    double& dist(int r, int q) { return dist_[r][q]; }
    bool reuse_possible() const;
    SearchResult reconstruct(int target_r, int target_q, double bstar);

    const LayeredGraph* lg_;
    const RefGraph* ref_;
    const ArmModel* arm_;
    MetricWeights metric_;

    std::vector<RefSub> ref_subs_;
    std::vector<LgSub> lg_subs_;
    std::vector<int> ref_orig2sub_;
    std::vector<int> lg_orig2sub_;
    std::vector<std::vector<int>> ref_chain_;  // interior sub ids per ref edge, frac order
    std::vector<std::vector<int>> lg_chain_;

    std::vector<std::vector<double>> cost_;  // [ref_sub][lg_sub]

    // search episode state
    long long epoch_ = 0;
    std::vector<std::vector<double>> dist_;
    std::vector<std::vector<long long>> dist_epoch_;
    std::vector<std::vector<long long>> settled_;
    std::vector<long long> lg_sub_settled_;  // epoch marks per sub id
    std::vector<long long> ref_sub_settled_;
    std::vector<PqEntry> frontier_;
    bool have_search_state_ = false;
    bool target_settled_ = false;
    std::optional<SearchResult> cached_result_;

    // dirty bookkeeping since the last search
    std::vector<int> dirty_lg_subs_;
    std::vector<int> dirty_ref_subs_;
    bool removed_or_blocked_ = false;
    bool endpoints_changed_ = false;

    // phase-2 scratch (epoch-stamped)
    long long bfs_epoch_ = 0;
    std::vector<std::vector<long long>> bfs_seen_;
    std::vector<std::vector<std::pair<int, int>>> bfs_parent_;
};

/// Search-then-verify loop: run bottleneck_search, collision-check the
/// traversed lg edges in path order, block the first colliding edge and
/// re-search. Returns the first fully collision-free result, or nullopt when
/// the product is exhausted. Edge verdicts persist in the layered graph.
std::optional<SearchResult> lazy_plan(ProductGraph& pg, LayeredGraph& lg,
                                      CollisionChecker& checker, double step);

}  // namespace follow

#endif
