#ifndef FOLLOW_LAYERED_GRAPH_HPP
#define FOLLOW_LAYERED_GRAPH_HPP

#include <vector>

#include "follow/geometry.hpp"
#include "follow/kinematics.hpp"
#include "follow/rng.hpp"

namespace follow {

enum class EdgeStatus { unknown, free, blocked };

/// Layered C-space graph: one layer of IK configurations per reference
/// waypoint, complete bipartite edges between consecutive layers plus
/// complete intra-layer edges. Vertices, edges and layers carry stable ids
/// (indices into append-only vectors); removed edges are tombstoned.
struct LayeredGraph {
    struct Vertex {
        Config q;
        TaskPose ee;  // cached fk(q)
        int layer = -1;
    };
    struct Edge {
        int u = -1;
        int v = -1;
        bool intra = false;
        int resolution = 1;
        EdgeStatus status = EdgeStatus::unknown;
        bool alive = true;
    };
    struct Layer {
        double alpha = 0.0;
        TaskPose waypoint;
        std::vector<int> verts;
    };

    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Layer> layers;            // by stable id
    std::vector<int> order;               // layer ids sorted by alpha
    std::vector<std::vector<int>> incident;  // alive edge ids per vertex

    int layer_position(int layer_id) const;
    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t alive_edge_count() const;
    std::size_t inter_edge_count() const;
    std::size_t intra_edge_count() const;
    int max_resolution() const;
    /// Alive edge id between u and v, or -1.
    int edge_between(int u, int v) const;
};

/// One-dimensional complex over the sampled reference waypoints.
struct RefGraph {
    struct Vertex {
        TaskPose pose;
        double alpha = 0.0;
    };
    struct Edge {
        int u = -1;  // lower-alpha endpoint
        int v = -1;
        int resolution = 1;
        bool alive = true;
    };

    std::vector<Vertex> verts;
    std::vector<int> order;  // vertex ids sorted by alpha
    std::vector<Edge> edges;
    std::vector<std::vector<int>> incident;

    std::size_t alive_edge_count() const;
    int max_resolution() const;
    int edge_between(int u, int v) const;
    /// Alive edge whose alpha span contains the given alpha (strictly inside).
    int edge_containing(double alpha) const;
};

struct LayeredParams {
    int r0 = 1;  // initial subsample resolution for every edge
    IkParams ik;
};

/// What a mutation did, in terms of stable ids. Consumed by the product
/// graph to update itself incrementally.
struct ChangeReport {
    enum class Kind { none, add_layer, add_ik, refine };
    Kind kind = Kind::none;
    bool failed = false;  // add_layer found no IK; nothing was mutated
    int layer_id = -1;
    std::vector<int> added_lg_vertices;
    std::vector<int> added_lg_edges;
    std::vector<int> removed_lg_edges;
    int added_ref_vertex = -1;
    std::vector<int> added_ref_edges;
    int removed_ref_edge = -1;
    int refined_lg_edge = -1;
    int refined_ref_edge = -1;
};

struct BuildResult {
    LayeredGraph lg;
    RefGraph ref;
};

/// Sample n waypoints arc-length-uniformly along the reference path (alpha 0
/// and 1 included), with up to k IK configurations per layer. Throws
/// ConstructionError if the first or last layer comes out empty.
BuildResult build_layered(const Polyline& reference, int n, int k, const ArmModel& arm,
                          RandomEngine& rng, const LayeredParams& params = {});

/// Insert a layer at reference parameter alpha in (0,1). A failed IK query
/// reports failed=true and leaves both graphs untouched.
ChangeReport add_layer(LayeredGraph& lg, RefGraph& ref, const Polyline& reference,
                       double alpha, int k, const ArmModel& arm, RandomEngine& rng,
                       const LayeredParams& params = {});

/// Add up to `extra` new distinct IK configurations to an existing layer,
/// wired per the edge-set rule. May add fewer (or none).
ChangeReport add_ik_samples(LayeredGraph& lg, const RefGraph& ref, int layer_id, int extra,
                            const ArmModel& arm, RandomEngine& rng,
                            const LayeredParams& params = {});

/// Nested refinement: r <- 2r + 1, so previous subsample points survive.
ChangeReport refine_lg_edge(LayeredGraph& lg, int edge_id);
ChangeReport refine_ref_edge(RefGraph& ref, int edge_id);

/// Structural invariant checker: alpha strictly increasing, edge set exactly
/// the inter+intra prescription over current layers, FK round-trips, ref is a
/// path graph aligned with the layers. Throws StateError on violation. Runs
/// automatically after every mutating operation above.
void check_structure(const LayeredGraph& lg, const RefGraph& ref, const ArmModel& arm,
                     double ik_eps);

}  // namespace follow

#endif
