#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "follow/errors.hpp"
#include "follow/kinematics.hpp"
#include "oracles.hpp"

using namespace follow;

namespace {

ArmModel make_arm(std::vector<double> links, double lo = -2 * M_PI, double hi = 2 * M_PI,
                  TaskPose base = {}) {
    std::vector<JointLimit> lim(links.size(), JointLimit{lo, hi});
    return ArmModel(std::move(links), std::move(lim), base);
}

Config cfg(std::initializer_list<double> a) { return Config{std::vector<double>(a)}; }

}  // namespace

TEST_CASE("fk analytic examples") {
    const ArmModel two = make_arm({1, 1});
    const TaskPose p1 = fk(two, cfg({0, 0}));
    CHECK(p1.x == doctest::Approx(2.0));
    CHECK(p1.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p1.theta == doctest::Approx(0.0));

    const TaskPose p2 = fk(two, cfg({M_PI / 2, -M_PI / 2}));
    CHECK(p2.x == doctest::Approx(1.0));
    CHECK(p2.y == doctest::Approx(1.0));
    CHECK(p2.theta == doctest::Approx(0.0));

    CHECK_THROWS_AS(fk(two, cfg({0, 0, 0})), InputError);
}

TEST_CASE("fk matches homogeneous-transform oracle") {
    RandomEngine rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> links;
        const int n = static_cast<int>(rng.uniform_int(4, 6));
        for (int i = 0; i < n; ++i) links.push_back(rng.uniform(0.3, 1.5));
        const TaskPose base = TaskPose::make(rng.uniform(-1, 1), rng.uniform(-1, 1),
                                             rng.uniform(-3, 3));
        const ArmModel arm = make_arm(links, -2 * M_PI, 2 * M_PI, base);
        Config q;
        for (int i = 0; i < n; ++i) q.angles.push_back(rng.uniform(-M_PI, M_PI));
        const TaskPose mine = fk(arm, q);
        const TaskPose ref = oracles::fk_homogeneous(arm, q);
        CHECK(mine.x == doctest::Approx(ref.x).epsilon(1e-12));
        CHECK(mine.y == doctest::Approx(ref.y).epsilon(1e-12));
        CHECK(angle_diff(mine.theta, ref.theta) < 1e-12);
    }
}

TEST_CASE("fk is 2pi-periodic per joint") {
    const ArmModel arm = make_arm({1, 0.7, 0.5, 0.9}, -10, 10);
    RandomEngine rng(5);
    const MetricWeights w;
    for (int trial = 0; trial < 50; ++trial) {
        Config q;
        for (int i = 0; i < 4; ++i) q.angles.push_back(rng.uniform(-2, 2));
        const std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, 3));
        Config q2 = q;
        q2[j] += 2 * M_PI;
        CHECK(task_distance(fk(arm, q), fk(arm, q2), w) < 1e-9);
    }
}

TEST_CASE("fk_links geometry") {
    const ArmModel two = make_arm({1, 1});
    const auto segs = fk_links(two, cfg({0, 0}));
    REQUIRE(segs.size() == 2);
    CHECK(segs[0].a.x == 0.0);
    CHECK(segs[0].b.x == doctest::Approx(1.0));
    CHECK(segs[1].b.x == doctest::Approx(2.0));

    const ArmModel one = make_arm({1});
    const auto up = fk_links(one, cfg({M_PI / 2}));
    CHECK(up[0].b.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(up[0].b.y == doctest::Approx(1.0));

    RandomEngine rng(8);
    const ArmModel arm = make_arm({1, 0.5, 0.8, 1.2});
    for (int t = 0; t < 20; ++t) {
        Config q;
        for (int i = 0; i < 4; ++i) q.angles.push_back(rng.uniform(-3, 3));
        const auto links = fk_links(arm, q);
        for (std::size_t i = 0; i + 1 < links.size(); ++i) {
            CHECK(links[i].b.x == links[i + 1].a.x);
            CHECK(links[i].b.y == links[i + 1].a.y);
        }
        const TaskPose ee = fk(arm, q);
        CHECK(links.back().b.x == doctest::Approx(ee.x).epsilon(1e-12));
        CHECK(links.back().b.y == doctest::Approx(ee.y).epsilon(1e-12));
    }
}

TEST_CASE("jacobian analytic example and last row") {
    const ArmModel two = make_arm({1, 1});
    const Jacobian j = jacobian(two, cfg({0, 0}));
    CHECK(j.dx[0] == doctest::Approx(0.0));
    CHECK(j.dx[1] == doctest::Approx(0.0));
    CHECK(j.dy[0] == doctest::Approx(2.0));
    CHECK(j.dy[1] == doctest::Approx(1.0));
    CHECK(j.dtheta[0] == 1.0);
    CHECK(j.dtheta[1] == 1.0);
}

TEST_CASE("jacobian matches central finite differences") {
    RandomEngine rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> links;
        const int n = static_cast<int>(rng.uniform_int(4, 7));
        for (int i = 0; i < n; ++i) links.push_back(rng.uniform(0.2, 1.4));
        const ArmModel arm = make_arm(links);
        Config q;
        for (int i = 0; i < n; ++i) q.angles.push_back(rng.uniform(-M_PI, M_PI));
        const Jacobian a = jacobian(arm, q);
        const Jacobian b = oracles::jacobian_fd(arm, q);
        for (int i = 0; i < n; ++i) {
            CHECK(a.dx[i] == doctest::Approx(b.dx[i]).epsilon(1e-5).scale(1.0));
            CHECK(a.dy[i] == doctest::Approx(b.dy[i]).epsilon(1e-5).scale(1.0));
            CHECK(a.dtheta[i] == doctest::Approx(b.dtheta[i]).epsilon(1e-5).scale(1.0));
        }
    }
}

TEST_CASE("sample_ik: unreachable target returns empty") {
    const ArmModel arm = make_arm({1, 1, 1, 1}, -M_PI, M_PI);
    RandomEngine rng(1);
    CHECK(sample_ik(arm, TaskPose::make(10, 0, 0), 8, rng).empty());
    CHECK(sample_ik(arm, TaskPose::make(0, 4.6, 1.0), 4, rng).empty());
}

TEST_CASE("sample_ik: round trip and joint limits") {
    RandomEngine rng(31337);
    const MetricWeights w;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(4, 6));
        std::vector<double> links;
        for (int i = 0; i < n; ++i) links.push_back(rng.uniform(0.4, 1.2));
        const ArmModel arm = make_arm(links, -M_PI, M_PI);
        // target = fk of a random feasible config, guaranteed solvable
        Config q0;
        for (int i = 0; i < n; ++i) q0.angles.push_back(rng.uniform(-2.5, 2.5));
        const TaskPose target = fk(arm, q0);
        auto sols = sample_ik(arm, target, 8, rng);
        CHECK(!sols.empty());
        for (const auto& q : sols) {
            CHECK(task_distance(fk(arm, q), target, w) <= 1e-9);
            CHECK(arm.within_limits(q));
        }
        // pairwise distinct
        for (std::size_t i = 0; i < sols.size(); ++i)
            for (std::size_t j = i + 1; j < sols.size(); ++j)
                CHECK(config_distance(sols[i], sols[j]) > 1e-9);
    }
}

TEST_CASE("sample_ik is deterministic given the seed") {
    const ArmModel arm = make_arm({1, 1, 1, 1}, -M_PI, M_PI);
    const TaskPose target = TaskPose::make(1.5, 0.5, 0.0);
    RandomEngine a(77), b(77);
    const auto sa = sample_ik(arm, target, 16, a);
    const auto sb = sample_ik(arm, target, 16, b);
    REQUIRE(sa.size() == sb.size());
    for (std::size_t i = 0; i < sa.size(); ++i)
        CHECK(config_distance(sa[i], sb[i]) == 0.0);
}

TEST_CASE("sample_ik covers the solution branches a grid search finds") {
    // 4-link arm: grid joint 1, solve the terminal 3R analytically, and
    // cluster grid solutions into connected branches over the joint-1 circle.
    const ArmModel arm = make_arm({1, 1, 1, 1}, -M_PI, M_PI);
    const TaskPose target = TaskPose::make(1.5, 0.5, 0.0);
    const MetricWeights w;

    const int grid = 720;
    // branch key: sign of the elbow joint (joint index 2 of the 3R chain)
    std::set<int> oracle_branches;
    std::vector<std::pair<double, Config>> grid_solutions;
    for (int g = 0; g < grid; ++g) {
        const double j1 = -M_PI + 2 * M_PI * (g + 0.5) / grid;
        // wrist point after removing the last link
        const double wx = target.x - std::cos(target.theta);
        const double wy = target.y - std::sin(target.theta);
        const double ox = std::cos(j1), oy = std::sin(j1);
        const double dx = wx - ox, dy = wy - oy;
        const double d = std::hypot(dx, dy);
        if (d > 2.0 || d < 0.0) continue;
        const double cose = std::clamp((d * d - 2.0) / 2.0, -1.0, 1.0);
        for (double elbow : {std::acos(cose), -std::acos(cose)}) {
            const double shoulder =
                std::atan2(dy, dx) - std::atan2(std::sin(elbow), 1.0 + std::cos(elbow)) - j1;
            const double j2 = std::remainder(shoulder, 2 * M_PI);
            const double j4 = std::remainder(target.theta - (j1 + j2 + elbow), 2 * M_PI);
            Config q{std::vector<double>{j1, j2, elbow, j4}};
            if (!arm.within_limits(q)) continue;
            if (task_distance(fk(arm, q), target, w) > 1e-6) continue;
            oracle_branches.insert(elbow >= 0 ? 1 : -1);
            grid_solutions.push_back({j1, q});
        }
    }
    REQUIRE(!oracle_branches.empty());

    RandomEngine rng(123);
    const auto sols = sample_ik(arm, target, 32, rng);
    REQUIRE(!sols.empty());
    // the sampler finds exactly the branches the oracle knows about
    std::set<int> sampled_branches;
    for (const auto& q : sols) sampled_branches.insert(q[2] >= 0 ? 1 : -1);
    CHECK(sampled_branches == oracle_branches);
    // and every sampled solution is near some grid solution
    for (const auto& q : sols) {
        double best = oracles::kInf;
        for (const auto& [j1, g] : grid_solutions)
            best = std::min(best, config_distance(q, g));
        CHECK(best < 0.1);  // grid spacing bound
    }
}

TEST_CASE("sample_ik respects tight joint limits") {
    // joint limits exclude the elbow-down branch entirely
    std::vector<JointLimit> lim = {JointLimit{-M_PI, M_PI}, JointLimit{-M_PI, M_PI},
                                   JointLimit{0.05, M_PI}, JointLimit{-M_PI, M_PI}};
    const ArmModel arm({1, 1, 1, 1}, lim);
    RandomEngine rng(9);
    const auto sols = sample_ik(arm, TaskPose::make(1.5, 0.5, 0.0), 16, rng);
    CHECK(!sols.empty());
    for (const auto& q : sols) CHECK(q[2] >= 0.05);
}
