#ifndef FOLLOW_DENSIFY_HPP
#define FOLLOW_DENSIFY_HPP

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "follow/product_search.hpp"

namespace follow {

enum class UpdateKind { local, global };
enum class MethodKind { add_layer, add_ik, refine };

const char* to_string(UpdateKind k);
const char* to_string(MethodKind m);

/// Densification strategy. For the hybrid strategy, p is the probability of
/// taking a *global* step: p=0 is purely local, p=1 purely global, matching
/// the convention that low p biases local updates.
struct Strategy {
    enum class Kind { hybrid, local_then_global };
    Kind kind = Kind::local_then_global;
    double p = 0.25;
    int m = 5;

    static Strategy hybrid(double p);
    static Strategy local_then_global(int m);
};

/// Local/global scheduling state. Local-then-global runs local updates until
/// m consecutive ones fail to improve the best cost, then global updates
/// until one improves it.
class StrategyState {
public:
    explicit StrategyState(Strategy s);
    UpdateKind next_kind(RandomEngine& rng);
    void record_outcome(UpdateKind kind, bool improved);
    const Strategy& strategy() const { return strategy_; }

private:
    Strategy strategy_;
    int stagnant_local_ = 0;
    bool global_mode_ = false;
};

struct PlannerOptions {
    int n0 = 4;
    int k0 = 4;
    int r0 = 1;
    double edge_collision_step = 0.05;
    IkParams ik;
    /// Test hook: force every densification step to use one method.
    std::optional<MethodKind> forced_method;
};

struct Budget {
    std::optional<long long> max_iterations;
    std::optional<double> max_seconds;
};

struct TraceRow {
    long long iteration = 0;
    double wall_seconds = 0.0;
    double best_frechet = 0.0;  // +inf while no solution has been found
    int n_layers = 0;
    long long total_ik = 0;
    int max_resolution = 0;
    std::string update_kind;  // init | local | global
    std::string method;       // init | add_layer | add_ik | refine
    long long collision_checks_cum = 0;
};

using Trace = std::vector<TraceRow>;

/// Where the current best path hurts most: the maximum-cost product edge
/// mapped back to a reference segment, the nearest layer, and the layered
/// edge it rides on.
struct BottleneckLocus {
    int ref_edge = -1;
    int layer_id = -1;
    int lg_edge = -1;
    ProductVertex worst;  // the vertex attaining the bottleneck edge cost
};

/// Anytime planner: owns the layered/reference/product structures, the
/// strategy state, and the trace. Single-threaded.
class Planner {
public:
    Planner(const ArmModel& arm, const World& world, Polyline reference, MetricWeights metric,
            PlannerOptions opts, Strategy strategy, std::uint64_t seed);

    /// One densification step: choose update kind and method, mutate, fold
    /// into the product graph, re-plan lazily, record a trace row.
    void step();

    BottleneckLocus locate_bottleneck() const;

    bool feasible() const { return best_.has_value(); }
    const std::optional<SearchResult>& best() const { return best_; }
    const Trace& trace() const { return trace_; }
    const LayeredGraph& layered() const { return lg_; }
    const RefGraph& ref_graph() const { return ref_; }
    const ProductGraph& product() const { return *pg_; }
    long long iterations_done() const { return iteration_; }
    double elapsed_seconds() const;

private:
    void replan(UpdateKind kind, MethodKind method, bool* improved);
    void push_row(const char* kind, const char* method);
    ChangeReport do_add_layer(UpdateKind kind);
    ChangeReport do_add_ik(UpdateKind kind);
    void do_refine(UpdateKind kind);

    const ArmModel& arm_;
    const World& world_;
    Polyline reference_;
    MetricWeights metric_;
    PlannerOptions opts_;
    StrategyState strategy_;
    RandomEngine rng_;
    LayeredGraph lg_;
    RefGraph ref_;
    std::unique_ptr<ProductGraph> pg_;
    CollisionChecker checker_;
    std::optional<SearchResult> best_;
    bool best_current_ = false;  // best_ reflects the current structures
    Trace trace_;
    long long iteration_ = 0;
    std::chrono::steady_clock::time_point t0_;
};

struct PlanOutcome {
    std::optional<SearchResult> best;
    Trace trace;
};

/// Build initial structures, plan lazily, then densify until the budget is
/// exhausted. Deterministic given the seed (wall_seconds column aside).
PlanOutcome anytime_plan(const ArmModel& arm, const World& world, const Polyline& reference,
                         const MetricWeights& metric, const PlannerOptions& opts,
                         const Strategy& strategy, const Budget& budget, std::uint64_t seed);

}  // namespace follow

#endif
