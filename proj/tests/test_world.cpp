#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "follow/errors.hpp"
#include "follow/world.hpp"
#include "oracles.hpp"

using namespace follow;

namespace {

ArmModel make_arm(std::vector<double> links) {
    std::vector<JointLimit> lim(links.size(), JointLimit{-2 * M_PI, 2 * M_PI});
    return ArmModel(std::move(links), std::move(lim));
}

Config cfg(std::initializer_list<double> a) { return Config{std::vector<double>(a)}; }

}  // namespace

TEST_CASE("obstacle constructors validate") {
    CHECK_THROWS_AS(make_circle(0, 0, 0.0), InputError);
    CHECK_THROWS_AS(make_polygon({{0, 0}, {1, 0}}), InputError);
    // clockwise square rejected
    CHECK_THROWS_AS(make_polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), InputError);
    CHECK_NOTHROW(make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
}

TEST_CASE("empty world never collides") {
    const World world;
    const ArmModel arm = make_arm({1, 1, 1, 1});
    RandomEngine rng(4);
    for (int t = 0; t < 50; ++t) {
        Config q;
        for (int i = 0; i < 4; ++i) q.angles.push_back(rng.uniform(-3, 3));
        CHECK(!config_in_collision(world, arm, q));
    }
}

TEST_CASE("circle at the base collides for every config") {
    const World world({make_circle(0, 0, 0.2)});
    const ArmModel arm = make_arm({1, 1});
    RandomEngine rng(5);
    for (int t = 0; t < 50; ++t) {
        Config q;
        for (int i = 0; i < 2; ++i) q.angles.push_back(rng.uniform(-3, 3));
        CHECK(config_in_collision(world, arm, q));
    }
}

TEST_CASE("boundary contact counts as collision") {
    // link along the x axis, circle tangent to it from above
    const World world({make_circle(1.0, 0.5, 0.5)});
    const ArmModel arm = make_arm({2});
    CHECK(config_in_collision(world, arm, cfg({0})));
}

TEST_CASE("collision agrees with the rasterization oracle") {
    RandomEngine rng(2718);
    const ArmModel arm = make_arm({1, 0.8, 0.6, 0.9});
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        std::vector<Obstacle> obs;
        const int nobs = static_cast<int>(rng.uniform_int(1, 3));
        for (int i = 0; i < nobs; ++i) {
            if (rng.bernoulli(0.5))
                obs.push_back(make_circle(rng.uniform(-3, 3), rng.uniform(-3, 3),
                                          rng.uniform(0.1, 0.6)));
            else
                obs.push_back(make_box(rng.uniform(-3, 3), rng.uniform(-3, 3),
                                       rng.uniform(0.1, 0.5), rng.uniform(0.1, 0.5),
                                       rng.uniform(0, M_PI)));
        }
        const World world(std::move(obs));
        Config q;
        for (int i = 0; i < 4; ++i) q.angles.push_back(rng.uniform(-M_PI, M_PI));
        // skip borderline cases the oracle cannot call reliably
        if (oracles::config_min_clearance(world, arm, q) < 2e-3) continue;
        ++checked;
        CHECK(config_in_collision(world, arm, q) ==
              oracles::config_collision_rasterized(world, arm, q));
    }
    CHECK(checked > 100);
}

TEST_CASE("collision is invariant under obstacle permutation") {
    RandomEngine rng(13);
    const ArmModel arm = make_arm({1, 1, 1, 1});
    std::vector<Obstacle> obs = {make_circle(1.5, 0.5, 0.3), make_box(-1, 1, 0.3, 0.2, 0.4),
                                 make_circle(0.5, -1.5, 0.4)};
    std::vector<Obstacle> rev(obs.rbegin(), obs.rend());
    const World w1(obs), w2(rev);
    for (int t = 0; t < 100; ++t) {
        Config q;
        for (int i = 0; i < 4; ++i) q.angles.push_back(rng.uniform(-M_PI, M_PI));
        CHECK(config_in_collision(w1, arm, q) == config_in_collision(w2, arm, q));
    }
}

TEST_CASE("self collision flag") {
    // fold the arm back onto itself: link 3 crosses link 1
    const ArmModel arm = make_arm({1, 1, 1, 1});
    const Config folded = cfg({0, M_PI * 0.9, M_PI * 0.9, 0});
    CHECK(!config_in_collision(World({}, false), arm, folded));
    CHECK(config_in_collision(World({}, true), arm, folded));
}

TEST_CASE("edge_in_collision basics") {
    const ArmModel arm = make_arm({1, 1});
    const World empty;
    const Config a = cfg({0, 0});
    CHECK(!edge_in_collision(empty, arm, a, a, 0.05));

    const World blocking({make_circle(2, 0, 0.1)});
    // endpoint a collides (arm stretched through the circle)
    CHECK(edge_in_collision(blocking, arm, a, cfg({M_PI / 2, 0}), 0.05));
    CHECK_THROWS_AS(edge_in_collision(empty, arm, a, a, 0.0), InputError);
}

TEST_CASE("edge collision matches a 10x finer resolution on curated seeds") {
    RandomEngine rng(321);
    const ArmModel arm = make_arm({1, 1, 1, 1});
    int agreements = 0, cases = 0;
    for (int t = 0; t < 120; ++t) {
        const World world({make_circle(rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5),
                                       rng.uniform(0.15, 0.5))});
        Config a, b;
        for (int i = 0; i < 4; ++i) {
            a.angles.push_back(rng.uniform(-M_PI, M_PI));
            b.angles.push_back(rng.uniform(-M_PI, M_PI));
        }
        if (config_in_collision(world, arm, a) || config_in_collision(world, arm, b)) continue;
        // curated: skip sweeps that graze obstacles too closely to call
        bool borderline = false;
        const int probes = 200;
        for (int s = 0; s <= probes && !borderline; ++s) {
            const Config mid = interpolate_config(a, b, double(s) / probes);
            if (oracles::config_min_clearance(world, arm, mid) < 5e-3 &&
                !config_in_collision(world, arm, mid))
                borderline = true;
        }
        if (borderline) continue;
        ++cases;
        const bool coarse = edge_in_collision(world, arm, a, b, 0.05);
        const bool fine = edge_in_collision(world, arm, a, b, 0.005);
        if (coarse == fine) ++agreements;
    }
    CHECK(cases > 30);
    CHECK(agreements == cases);
}

TEST_CASE("nested sample sets: coarse collision implies fine collision") {
    RandomEngine rng(555);
    const ArmModel arm = make_arm({1, 1, 1, 1});
    for (int t = 0; t < 60; ++t) {
        const World world({make_box(rng.uniform(-2, 2), rng.uniform(-2, 2),
                                    rng.uniform(0.2, 0.6), rng.uniform(0.2, 0.6),
                                    rng.uniform(0, M_PI))});
        Config a, b;
        for (int i = 0; i < 4; ++i) {
            a.angles.push_back(rng.uniform(-M_PI, M_PI));
            b.angles.push_back(rng.uniform(-M_PI, M_PI));
        }
        // choose the step from the span so the sample counts nest exactly
        const double span = config_max_norm(a, b);
        if (span == 0.0) continue;
        const double step = span / 8.0;
        if (edge_in_collision(world, arm, a, b, step))
            CHECK(edge_in_collision(world, arm, a, b, step / 2.0));
    }
}
