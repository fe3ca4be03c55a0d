#include "follow/densify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "follow/errors.hpp"

namespace follow {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kImproveEps = 1e-9;
}

const char* to_string(UpdateKind k) { return k == UpdateKind::local ? "local" : "global"; }

const char* to_string(MethodKind m) {
    switch (m) {
        case MethodKind::add_layer: return "add_layer";
        case MethodKind::add_ik: return "add_ik";
        default: return "refine";
    }
}

Strategy Strategy::hybrid(double p) {
    if (p < 0.0 || p > 1.0) throw InputError("hybrid p must lie in [0,1]");
    Strategy s;
    s.kind = Kind::hybrid;
    s.p = p;
    return s;
}

Strategy Strategy::local_then_global(int m) {
    if (m < 1) throw InputError("local-then-global m must be >= 1");
    Strategy s;
    s.kind = Kind::local_then_global;
    s.m = m;
    return s;
}

StrategyState::StrategyState(Strategy s) : strategy_(s) {}

UpdateKind StrategyState::next_kind(RandomEngine& rng) {
    if (strategy_.kind == Strategy::Kind::hybrid)
        return rng.bernoulli(strategy_.p) ? UpdateKind::global : UpdateKind::local;
    return global_mode_ ? UpdateKind::global : UpdateKind::local;
}

void StrategyState::record_outcome(UpdateKind kind, bool improved) {
    if (strategy_.kind != Strategy::Kind::local_then_global) return;
    if (kind == UpdateKind::local) {
        if (improved) {
            stagnant_local_ = 0;
        } else if (++stagnant_local_ >= strategy_.m) {
            global_mode_ = true;
            stagnant_local_ = 0;
        }
    } else if (improved) {
        global_mode_ = false;
    }
}

Planner::Planner(const ArmModel& arm, const World& world, Polyline reference,
                 MetricWeights metric, PlannerOptions opts, Strategy strategy,
                 std::uint64_t seed)
    : arm_(arm),
      world_(world),
      reference_(std::move(reference)),
      metric_(metric),
      opts_(opts),
      strategy_(strategy),
      rng_(seed),
      lg_(),
      ref_(),
      pg_(),
      checker_(world_, arm_),
      t0_(std::chrono::steady_clock::now()) {
    LayeredParams lp{opts_.r0, opts_.ik};
    auto built = build_layered(reference_, opts_.n0, opts_.k0, arm_, rng_, lp);
    lg_ = std::move(built.lg);
    ref_ = std::move(built.ref);
    pg_ = std::make_unique<ProductGraph>(lg_, ref_, arm_, metric_);
    best_ = lazy_plan(*pg_, lg_, checker_, opts_.edge_collision_step);
    best_current_ = best_.has_value();
    push_row("init", "init");
}

double Planner::elapsed_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
}

void Planner::push_row(const char* kind, const char* method) {
    TraceRow row;
    row.iteration = iteration_;
    row.wall_seconds = elapsed_seconds();
    row.best_frechet = best_ ? best_->bottleneck_cost : kInf;
    row.n_layers = static_cast<int>(lg_.order.size());
    row.total_ik = static_cast<long long>(lg_.vertices.size());
    row.max_resolution = std::max(lg_.max_resolution(), ref_.max_resolution());
    row.update_kind = kind;
    row.method = method;
    row.collision_checks_cum = checker_.config_checks();
    trace_.push_back(std::move(row));
}

BottleneckLocus Planner::locate_bottleneck() const {
    if (!best_) throw StateError("locate_bottleneck requires a current best result");
    const auto& path = best_->product_path;
    const ProductGraph& pg = *pg_;

    // Maximum-cost edge along the path, earliest on ties; then the endpoint
    // attaining that cost (earlier endpoint on ties).
    std::size_t best_i = 1;
    double best_cost = -kInf;
    for (std::size_t i = 1; i < path.size(); ++i) {
        const double ca = pg.vertex_cost(path[i - 1].ref_node, path[i - 1].lg_node);
        const double cb = pg.vertex_cost(path[i].ref_node, path[i].lg_node);
        const double c = std::max(ca, cb);
        if (c > best_cost) {
            best_cost = c;
            best_i = i;
        }
    }
    const ProductVertex a = path[best_i - 1];
    const ProductVertex b = path[best_i];
    const double ca = pg.vertex_cost(a.ref_node, a.lg_node);
    const ProductVertex worst = (ca >= pg.vertex_cost(b.ref_node, b.lg_node)) ? a : b;

    BottleneckLocus locus;
    locus.worst = worst;

    // Reference segment containing the edge's ref component.
    const auto& ra = pg.ref_subs()[a.ref_node];
    const auto& rb = pg.ref_subs()[b.ref_node];
    if (a.ref_node != b.ref_node) {
        locus.ref_edge = ra.parent_edge >= 0 ? ra.parent_edge : rb.parent_edge;
        if (locus.ref_edge < 0)
            locus.ref_edge = ref_.edge_between(ra.parent_vertex, rb.parent_vertex);
    } else if (ra.parent_edge >= 0) {
        locus.ref_edge = ra.parent_edge;
    } else {
        // Original waypoint: prefer the segment continuing forward.
        const int vid = ra.parent_vertex;
        locus.ref_edge = -1;
        for (int eid : ref_.incident[vid])
            if (ref_.edges[eid].u == vid) locus.ref_edge = eid;
        if (locus.ref_edge < 0 && !ref_.incident[vid].empty())
            locus.ref_edge = ref_.incident[vid].front();
    }

    // Nearest layer to the lg component of the worst vertex.
    const auto& qs = pg.lg_subs()[worst.lg_node];
    if (qs.parent_vertex >= 0) {
        locus.layer_id = lg_.vertices[qs.parent_vertex].layer;
    } else {
        const auto& e = lg_.edges[qs.parent_edge];
        if (e.intra)
            locus.layer_id = lg_.vertices[e.u].layer;
        else
            locus.layer_id =
                qs.frac <= 0.5 ? lg_.vertices[e.u].layer : lg_.vertices[e.v].layer;
    }

    // The lg edge the bottleneck rides on.
    locus.lg_edge = pg.lg_move_parent_edge(a, b);
    if (locus.lg_edge < 0 && qs.parent_edge >= 0) locus.lg_edge = qs.parent_edge;
    if (locus.lg_edge < 0) {
        // Stationary lg component at an original vertex: nearest lg move
        // along the path, looking forward first.
        for (std::size_t i = best_i + 1; i < path.size() && locus.lg_edge < 0; ++i)
            locus.lg_edge = pg.lg_move_parent_edge(path[i - 1], path[i]);
        for (std::size_t i = best_i - 1; i >= 1 && locus.lg_edge < 0; --i)
            locus.lg_edge = pg.lg_move_parent_edge(path[i - 1], path[i]);
        if (locus.lg_edge < 0 && qs.parent_vertex >= 0 &&
            !lg_.incident[qs.parent_vertex].empty())
            locus.lg_edge = lg_.incident[qs.parent_vertex].front();
    }
    return locus;
}

ChangeReport Planner::do_add_layer(UpdateKind kind) {
    LayeredParams lp{opts_.r0, opts_.ik};
    double alpha = -1.0;
    if (kind == UpdateKind::local) {
        const auto locus = locate_bottleneck();
        const auto& e = ref_.edges[locus.ref_edge];
        alpha = 0.5 * (ref_.verts[e.u].alpha + ref_.verts[e.v].alpha);
        if (!(alpha > ref_.verts[e.u].alpha && alpha < ref_.verts[e.v].alpha)) {
            ChangeReport rep;
            rep.kind = ChangeReport::Kind::add_layer;
            rep.failed = true;  // segment too short to split in floating point
            return rep;
        }
    } else {
        // Uniform in (0,1), rejecting existing layer parameters.
        for (int tries = 0; tries < 64; ++tries) {
            const double cand = rng_.uniform01();
            if (cand <= 0.0) continue;
            bool clash = false;
            for (const auto& layer : lg_.layers)
                if (layer.alpha == cand) clash = true;
            if (!clash) {
                alpha = cand;
                break;
            }
        }
        if (alpha < 0.0) {
            ChangeReport rep;
            rep.kind = ChangeReport::Kind::add_layer;
            rep.failed = true;
            return rep;
        }
    }
    return add_layer(lg_, ref_, reference_, alpha, opts_.k0, arm_, rng_, lp);
}

ChangeReport Planner::do_add_ik(UpdateKind kind) {
    LayeredParams lp{opts_.r0, opts_.ik};
    int layer_id;
    if (kind == UpdateKind::local) {
        layer_id = locate_bottleneck().layer_id;
    } else {
        const auto idx = rng_.uniform_int(0, static_cast<std::int64_t>(lg_.order.size()) - 1);
        layer_id = lg_.order[static_cast<std::size_t>(idx)];
    }
    return add_ik_samples(lg_, ref_, layer_id, opts_.k0, arm_, rng_, lp);
}

void Planner::do_refine(UpdateKind kind) {
    if (kind == UpdateKind::local) {
        const auto locus = locate_bottleneck();
        if (locus.lg_edge >= 0) pg_->apply_change(refine_lg_edge(lg_, locus.lg_edge));
        if (locus.ref_edge >= 0) pg_->apply_change(refine_ref_edge(ref_, locus.ref_edge));
        return;
    }
    // Uniform over the union of alive lg edges and ref edges.
    std::vector<int> lg_ids, ref_ids;
    for (std::size_t i = 0; i < lg_.edges.size(); ++i)
        if (lg_.edges[i].alive) lg_ids.push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < ref_.edges.size(); ++i)
        if (ref_.edges[i].alive) ref_ids.push_back(static_cast<int>(i));
    const auto total = static_cast<std::int64_t>(lg_ids.size() + ref_ids.size());
    const auto idx = rng_.uniform_int(0, total - 1);
    if (idx < static_cast<std::int64_t>(lg_ids.size()))
        pg_->apply_change(refine_lg_edge(lg_, lg_ids[static_cast<std::size_t>(idx)]));
    else
        pg_->apply_change(refine_ref_edge(
            ref_, ref_ids[static_cast<std::size_t>(idx - lg_ids.size())]));
}

void Planner::step() {
    ++iteration_;
    UpdateKind kind = strategy_.next_kind(rng_);
    // Without a live bottleneck (never feasible, or the best predates a
    // structural change that momentarily broke feasibility) only global
    // updates are meaningful.
    if (!best_ || !best_current_) kind = UpdateKind::global;
    MethodKind method = opts_.forced_method
                            ? *opts_.forced_method
                            : static_cast<MethodKind>(rng_.uniform_int(0, 2));

    bool improved = false;
    replan(kind, method, &improved);
    strategy_.record_outcome(kind, improved);
    push_row(to_string(kind), to_string(method));
}

void Planner::replan(UpdateKind kind, MethodKind method, bool* improved) {
    switch (method) {
        case MethodKind::add_layer: {
            const ChangeReport rep = do_add_layer(kind);
            pg_->apply_change(rep);
            break;
        }
        case MethodKind::add_ik: {
            const ChangeReport rep = do_add_ik(kind);
            pg_->apply_change(rep);
            break;
        }
        case MethodKind::refine:
            do_refine(kind);
            break;
    }
    const double prev = best_ ? best_->bottleneck_cost : kInf;
    auto result = lazy_plan(*pg_, lg_, checker_, opts_.edge_collision_step);
    if (result) {
        // The fresh result is optimal under the current structures, i.e. it
        // already is the re-evaluated best; keep the previous solution only
        // while the product is (temporarily) infeasible.
        best_ = std::move(result);
        best_current_ = true;
    } else {
        best_current_ = false;
    }
    *improved = best_ && (prev - best_->bottleneck_cost > kImproveEps);
}

PlanOutcome anytime_plan(const ArmModel& arm, const World& world, const Polyline& reference,
                         const MetricWeights& metric, const PlannerOptions& opts,
                         const Strategy& strategy, const Budget& budget, std::uint64_t seed) {
    Planner planner(arm, world, reference, metric, opts, strategy, seed);
    const long long max_iters =
        budget.max_iterations ? *budget.max_iterations : std::numeric_limits<long long>::max();
    while (planner.iterations_done() < max_iters) {
        if (budget.max_seconds && planner.elapsed_seconds() >= *budget.max_seconds) break;
        planner.step();
    }
    PlanOutcome out;
    out.best = planner.best();
    out.trace = planner.trace();
    return out;
}

}  // namespace follow
