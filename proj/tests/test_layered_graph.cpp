#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "follow/errors.hpp"
#include "follow/layered_graph.hpp"

using namespace follow;

namespace {

ArmModel unit_arm() {
    std::vector<JointLimit> lim(4, JointLimit{-M_PI, M_PI});
    return ArmModel({1, 1, 1, 1}, lim);
}

Polyline straight_ref() {
    return Polyline({TaskPose::make(2.0, -0.9, M_PI / 2), TaskPose::make(2.0, 0.9, M_PI / 2)});
}

}  // namespace

TEST_CASE("build: edge counts forced by the layer prescription") {
    const ArmModel arm = unit_arm();
    RandomEngine rng(1);

    auto two = build_layered(straight_ref(), 2, 1, arm, rng);
    CHECK(two.lg.inter_edge_count() == 1);
    CHECK(two.lg.intra_edge_count() == 0);
    CHECK(two.ref.alive_edge_count() == 1);

    RandomEngine rng2(2);
    auto three = build_layered(straight_ref(), 3, 2, arm, rng2);
    REQUIRE(three.lg.order.size() == 3);
    bool all_full = true;
    for (int lid : three.lg.order)
        if (three.lg.layers[lid].verts.size() != 2) all_full = false;
    if (all_full) {
        CHECK(three.lg.inter_edge_count() == 8);
        CHECK(three.lg.intra_edge_count() == 3);
    }
    // counts identities hold regardless of fill
    std::size_t expect_inter = 0, expect_intra = 0, expect_v = 0;
    for (std::size_t i = 0; i < three.lg.order.size(); ++i) {
        const auto k = three.lg.layers[three.lg.order[i]].verts.size();
        expect_v += k;
        expect_intra += k * (k - 1) / 2;
        if (i + 1 < three.lg.order.size())
            expect_inter += k * three.lg.layers[three.lg.order[i + 1]].verts.size();
    }
    CHECK(three.lg.vertex_count() == expect_v);
    CHECK(three.lg.inter_edge_count() == expect_inter);
    CHECK(three.lg.intra_edge_count() == expect_intra);
}

TEST_CASE("build: unreachable endpoint is a construction error") {
    const ArmModel arm = unit_arm();
    RandomEngine rng(3);
    const Polyline bad({TaskPose::make(9.0, 0, 0), TaskPose::make(2.0, 0, 0)});
    CHECK_THROWS_AS(build_layered(bad, 3, 2, arm, rng), ConstructionError);
    const Polyline bad_last({TaskPose::make(2.0, 0, 0), TaskPose::make(9.0, 0, 0)});
    CHECK_THROWS_AS(build_layered(bad_last, 3, 2, arm, rng), ConstructionError);
}

TEST_CASE("build parameter validation") {
    const ArmModel arm = unit_arm();
    RandomEngine rng(4);
    CHECK_THROWS_AS(build_layered(straight_ref(), 1, 1, arm, rng), InputError);
    CHECK_THROWS_AS(build_layered(straight_ref(), 2, 0, arm, rng), InputError);
}

TEST_CASE("add_layer: bypassed edges replaced by bipartite wiring") {
    const ArmModel arm = unit_arm();
    RandomEngine rng(5);
    auto built = build_layered(straight_ref(), 2, 3, arm, rng);
    const std::size_t k1 = built.lg.layers[built.lg.order[0]].verts.size();
    const std::size_t k2 = built.lg.layers[built.lg.order[1]].verts.size();
    const std::size_t before_inter = built.lg.inter_edge_count();
    CHECK(before_inter == k1 * k2);

    const auto rep = add_layer(built.lg, built.ref, straight_ref(), 0.5, 3, arm, rng);
    REQUIRE(!rep.failed);
    const std::size_t k3 = built.lg.layers[rep.layer_id].verts.size();
    CHECK(rep.removed_lg_edges.size() == k1 * k2);
    CHECK(rep.added_lg_vertices.size() == k3);
    CHECK(rep.added_lg_edges.size() == k1 * k3 + k3 * k2 + k3 * (k3 - 1) / 2);
    CHECK(built.lg.inter_edge_count() == k1 * k3 + k3 * k2);
    CHECK(rep.added_ref_edges.size() == 2);
    CHECK(rep.removed_ref_edge >= 0);
    CHECK(built.ref.order.size() == 3);
}

TEST_CASE("add_layer: duplicate alpha is an input error") {
    const ArmModel arm = unit_arm();
    RandomEngine rng(6);
    auto built = build_layered(straight_ref(), 3, 1, arm, rng);
    CHECK_THROWS_AS(add_layer(built.lg, built.ref, straight_ref(), 0.5, 1, arm, rng),
                    InputError);
    CHECK_THROWS_AS(add_layer(built.lg, built.ref, straight_ref(), 0.0, 1, arm, rng),
                    InputError);
    CHECK_THROWS_AS(add_layer(built.lg, built.ref, straight_ref(), 1.0, 1, arm, rng),
                    InputError);
}

TEST_CASE("add_layer: empty IK reports failure and mutates nothing") {
    const ArmModel arm = unit_arm();
    RandomEngine rng(7);
    // middle waypoint far outside the reachable disc
    const Polyline bulge({TaskPose::make(3.9, 0, 0), TaskPose::make(0, 5.5, M_PI / 2),
                          TaskPose::make(-3.9, 0, M_PI)});
    auto built = build_layered(bulge, 2, 2, arm, rng);  // endpoints only
    const auto edges_before = built.lg.alive_edge_count();
    const auto verts_before = built.lg.vertex_count();
    const auto rep = add_layer(built.lg, built.ref, bulge, 0.5, 2, arm, rng);
    CHECK(rep.failed);
    CHECK(built.lg.alive_edge_count() == edges_before);
    CHECK(built.lg.vertex_count() == verts_before);
    CHECK(built.ref.order.size() == 2);
}

TEST_CASE("add_ik_samples wiring counts") {
    const ArmModel arm = unit_arm();
    RandomEngine rng(8);
    auto built = build_layered(straight_ref(), 3, 2, arm, rng);
    const int mid = built.lg.order[1];
    const std::size_t k_prev = built.lg.layers[built.lg.order[0]].verts.size();
    const std::size_t k_next = built.lg.layers[built.lg.order[2]].verts.size();
    const std::size_t k_mid = built.lg.layers[mid].verts.size();

    const auto rep = add_ik_samples(built.lg, built.ref, mid, 1, arm, rng);
    if (rep.added_lg_vertices.size() == 1)
        CHECK(rep.added_lg_edges.size() == k_prev + k_next + k_mid);

    // first layer: only one neighboring layer gets wired
    const int first = built.lg.order[0];
    const std::size_t k_first = built.lg.layers[first].verts.size();
    const std::size_t k_second = built.lg.layers[built.lg.order[1]].verts.size();
    const auto rep2 = add_ik_samples(built.lg, built.ref, first, 1, arm, rng);
    if (rep2.added_lg_vertices.size() == 1)
        CHECK(rep2.added_lg_edges.size() == k_first + k_second);
}

TEST_CASE("add_ik_samples: same seed adds nothing new") {
    const ArmModel arm = unit_arm();
    RandomEngine rng(99);
    auto built = build_layered(straight_ref(), 2, 4, arm, rng);
    const int first = built.lg.order[0];
    const auto before = built.lg.layers[first].verts.size();
    // replay the exact stream that produced the first layer's samples
    RandomEngine replay(99);
    const auto rep = add_ik_samples(built.lg, built.ref, first, static_cast<int>(before), arm,
                                    replay);
    CHECK(rep.added_lg_vertices.empty());
    CHECK(built.lg.layers[first].verts.size() == before);
}

TEST_CASE("refine doubles interior density via r -> 2r+1") {
    const ArmModel arm = unit_arm();
    RandomEngine rng(10);
    auto built = build_layered(straight_ref(), 2, 1, arm, rng);
    int eid = -1;
    for (std::size_t i = 0; i < built.lg.edges.size(); ++i)
        if (built.lg.edges[i].alive) eid = static_cast<int>(i);
    REQUIRE(eid >= 0);
    CHECK(built.lg.edges[eid].resolution == 1);
    refine_lg_edge(built.lg, eid);
    CHECK(built.lg.edges[eid].resolution == 3);
    refine_lg_edge(built.lg, eid);
    CHECK(built.lg.edges[eid].resolution == 7);

    LayeredParams p0;
    p0.r0 = 0;
    RandomEngine rng2(10);
    auto built0 = build_layered(straight_ref(), 2, 1, arm, rng2, p0);
    int e0 = -1;
    for (std::size_t i = 0; i < built0.lg.edges.size(); ++i)
        if (built0.lg.edges[i].alive) e0 = static_cast<int>(i);
    refine_lg_edge(built0.lg, e0);
    CHECK(built0.lg.edges[e0].resolution == 1);

    refine_ref_edge(built.ref, 0);
    CHECK(built.ref.edges[0].resolution == 3);
}

TEST_CASE("structural checker holds across random mutation sequences") {
    const ArmModel arm = unit_arm();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RandomEngine rng(seed);
        const Polyline ref({TaskPose::make(2.5, -0.8, 1.2), TaskPose::make(2.2, 0.0, 1.4),
                            TaskPose::make(2.5, 0.8, 1.2)});
        auto built = build_layered(ref, 3, 2, arm, rng);
        for (int step = 0; step < 25; ++step) {
            const int what = static_cast<int>(rng.uniform_int(0, 2));
            if (what == 0) {
                const double alpha = rng.uniform01();
                bool clash = alpha <= 0.0 || alpha >= 1.0;
                for (const auto& l : built.lg.layers)
                    if (l.alpha == alpha) clash = true;
                if (!clash) add_layer(built.lg, built.ref, ref, alpha, 2, arm, rng);
            } else if (what == 1) {
                const auto pos = rng.uniform_int(0, static_cast<std::int64_t>(
                                                        built.lg.order.size()) - 1);
                add_ik_samples(built.lg, built.ref,
                               built.lg.order[static_cast<std::size_t>(pos)], 1, arm, rng);
            } else {
                std::vector<int> alive;
                for (std::size_t i = 0; i < built.lg.edges.size(); ++i)
                    if (built.lg.edges[i].alive) alive.push_back(static_cast<int>(i));
                if (!alive.empty()) {
                    const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(
                                                             alive.size()) - 1);
                    refine_lg_edge(built.lg, alive[static_cast<std::size_t>(pick)]);
                }
            }
            // explicit re-check on top of the built-in per-mutation checks
            CHECK_NOTHROW(check_structure(built.lg, built.ref, arm, 1e-9));
        }
    }
}
