#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "owalk/geometry.hpp"

using namespace owalk;

namespace {

Environment three_neighbor_trap() {
    // obstacles on three of the four neighbors of the origin
    Environment env;
    env.window = ball_points({origin(2), 6.0});
    env.obstacles = LatticeSet(2);
    env.obstacles.insert(Point{1, 0});
    env.obstacles.insert(Point{-1, 0});
    env.obstacles.insert(Point{0, 1});
    return env;
}

}  // namespace

TEST_CASE("truly open: exact two-step DP value") {
    Environment env = three_neighbor_trap();
    // the only safe first step is (0,-1), prob 1/4; all of its neighbors are
    // open, so P_0(tau > 2) = 1/4 exactly
    CHECK(survival_dp(env, origin(2), 2) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(is_truly_open(env, origin(2), {2, 0.05}));
    CHECK(!is_truly_open(env, origin(2), {2, 0.30}));
    // an obstacle site is never truly open
    CHECK(!is_truly_open(env, Point{1, 0}, {2, 0.05}));
}

TEST_CASE("paper-scale truly-open parameters") {
    TrulyOpenConfig cfg = TrulyOpenConfig::paper_defaults(100);
    double logN = std::log(100.0);
    CHECK(cfg.t_surv == static_cast<long long>(std::ceil(std::pow(logN, 5))));
    CHECK(cfg.threshold == doctest::Approx(std::exp(-logN * logN)));
}

TEST_CASE("truly-open cluster with no obstacles is the confinement ball") {
    Environment env;
    env.window = ball_points({origin(2), 10.0});
    env.obstacles = LatticeSet(2);
    LatticeSet t = truly_open_cluster(env, {3, 0.5}, {origin(2), 5.0});
    CHECK(t == ball_points({origin(2), 5.0}));
}

TEST_CASE("truly-open cluster is empty when the origin is blocked") {
    Environment env = three_neighbor_trap();
    env.obstacles.insert(Point{0, -1});  // all four neighbors blocked
    LatticeSet t = truly_open_cluster(env, {2, 0.05}, {origin(2), 4.0});
    CHECK(t.empty());
}

TEST_CASE("skeletal set: anchor first, near obstacles absorbed") {
    Environment env;
    env.window = ball_points({origin(2), 20.0});
    env.obstacles = LatticeSet(2);
    env.obstacles.insert(Point{0, 0});
    env.obstacles.insert(Point{1, 0});   // inside the separation ball of the anchor
    env.obstacles.insert(Point{5, 0});
    SkeletalSet sk = skeletal_set(env, origin(2), 16);
    CHECK(sk.separation() == doctest::Approx(2.0));  // 16^{1/4}
    REQUIRE(sk.points.size() == 2);
    CHECK(sk.points[0] == origin(2));
    CHECK(sk.points[1] == Point{5, 0});
    CHECK(sk.inner_points.size() == 2);  // both within l/2 = 8
    CHECK_THROWS(skeletal_set(env, Point{2, 2}, 16));  // anchor must be an obstacle
}

TEST_CASE("skeletal invariants on random environments") {
    std::mt19937_64 seeds(3);
    for (int trial = 0; trial < 50; ++trial) {
        ModelParams params{2, 0.85, 0, seeds()};
        long long l = 16;
        LatticeSet window = ball_points({origin(2), 17.0});
        Environment env = sample_environment(params, window);
        if (env.obstacles.empty()) continue;
        Point anchor = env.obstacles.sorted_points().front();
        SkeletalSet sk = skeletal_set(env, anchor, l);
        double sep = sk.separation();
        for (std::size_t i = 1; i < sk.points.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                CHECK(sk.points[i].norm2(sk.points[j]) > sep - 1e-12);
        for (const Point& y : env.obstacles.members()) {
            if (y.norm2(anchor) > static_cast<double>(l)) continue;
            double dmin = 1e300;
            for (const Point& q : sk.points) dmin = std::min(dmin, y.norm2(q));
            CHECK(dmin <= sep + 1e-12);
        }
    }
}

TEST_CASE("balanced radius on a single-obstacle instance") {
    Environment env;
    env.window = ball_points({origin(2), 70.0});
    env.obstacles = LatticeSet(2);
    env.obstacles.insert(origin(2));
    BalancedRadiusResult res = balanced_radius(env, origin(2), 64, 0.01, 0.01);
    REQUIRE(res.found);
    CHECK(res.j_star == 0);
    CHECK(res.l_star == 64.0);
    CHECK(res.skeleton_size == 1);
    CHECK(res.inner_size == 1);
    CHECK(res.l_star >= std::pow(64.0, 5.0 / 6.0));
    // density precondition: anchor must be an obstacle
    CHECK_THROWS(balanced_radius(env, Point{3, 3}, 64, 0.01, 0.01));
}

TEST_CASE("gamma rate: d=2 cutoff and limits") {
    CHECK(gamma_rate(0, 100, 2, 0.5) == 0.0);
    // argument <= 1 gives 0 by the max with 0
    CHECK(gamma_rate(1000000, 100, 2, 0.5) == 0.0);
    double g1 = gamma_rate(1, 100, 2, 0.5);
    double g2 = gamma_rate(5, 100, 2, 0.5);
    CHECK(g1 > 0.0);
    CHECK(g2 > g1);  // more skeletal points, faster hitting
    CHECK_THROWS(gamma_rate(1, 100, 2, 1.5));
}

TEST_CASE("gamma rate: d=3 increasing in k, decreasing in l") {
    double prev = -1.0;
    for (long long k = 0; k <= 30; ++k) {
        double g = gamma_rate(k, 50, 3, 0.5);
        CHECK(g >= prev);
        prev = g;
    }
    CHECK(gamma_rate(5, 100, 3, 0.5) < gamma_rate(5, 50, 3, 0.5));
}

TEST_CASE("crossing decomposition: hand-worked excursions") {
    WalkPath w(origin(2), 2);
    for (int i = 0; i < 4; ++i) w.push_step(0);  // out to (4,0)
    for (int i = 0; i < 4; ++i) w.push_step(1);  // back to the origin
    CrossingDecomposition cd = crossing_decomposition(w, origin(2), 1.0, 3.0);
    REQUIRE(cd.sigma.size() == 2);
    CHECK(cd.sigma[0] == 0);   // starts inside the closed inner ball
    CHECK(cd.tau[0] == 4);     // (4,0) is the first site outside B(0,3)
    CHECK(cd.sigma[1] == 6);   // (2,0) neighbors (1,0), in the closed inner ball
    CHECK(cd.tau[1] == 8);     // truncated at N
    CHECK(cd.durations == std::vector<long long>{4, 2});
    CHECK(cd.K == 2);
}

TEST_CASE("crossing decomposition: no entry gives K = 0") {
    WalkPath w(origin(2), 2);
    for (int i = 0; i < 6; ++i) w.push_step(0);
    CrossingDecomposition cd = crossing_decomposition(w, Point{50, 0}, 2.0, 5.0);
    REQUIRE(cd.sigma.size() == 1);
    CHECK(cd.sigma[0] == 6);  // sigma truncated at N
    CHECK(cd.tau[0] == 6);
    CHECK(cd.durations[0] == 0);
    CHECK(cd.K == 0);
}

TEST_CASE("crossing stopping times are truncated at N and interlaced") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> mv(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        WalkPath w(origin(2), 2);
        for (int i = 0; i < 40; ++i) w.push_step(static_cast<std::uint8_t>(mv(rng)));
        CrossingDecomposition cd = crossing_decomposition(w, origin(2), 2.0, 4.0);
        for (std::size_t k = 0; k < cd.sigma.size(); ++k) {
            CHECK(cd.sigma[k] >= 0);
            CHECK(cd.sigma[k] <= cd.tau[k]);
            CHECK(cd.tau[k] <= 40);
            if (k) CHECK(cd.sigma[k] > cd.tau[k - 1]);
        }
    }
}

TEST_CASE("obstacle density event") {
    Environment env;
    env.window = ball_points({origin(2), 12.0});
    env.obstacles = LatticeSet(2);
    env.obstacles.insert(origin(2));
    CHECK(obstacle_density_event(env, origin(2), 10, 0.01));
    CHECK(!obstacle_density_event(env, Point{1, 1}, 10, 0.01));  // not an obstacle
    LatticeSet fill = ball_points({origin(2), 3.0});
    for (const Point& q : fill.members()) env.obstacles.insert(q);
    CHECK(!obstacle_density_event(env, origin(2), 3, 0.5));  // density 1 inside B(0,3)
}

TEST_CASE("ball covering deficit") {
    LatticeSet range = ball_points({origin(2), 5.0});
    CHECK(ball_covering_deficit(range, origin(2), 5.0).missed == 0);
    CoveringDeficit d = ball_covering_deficit(range, origin(2), 6.0);
    CHECK(d.missed == static_cast<long long>(ball_points({origin(2), 6.0}).size() - range.size()));
    CHECK(d.fraction > 0.0);
    range.erase(origin(2));
    CHECK(ball_covering_deficit(range, origin(2), 5.0).missed == 1);
}

TEST_CASE("boundary size") {
    CHECK(boundary_size(ball_points({origin(2), 1.0})) == 8);
    CHECK_THROWS(boundary_size(LatticeSet(2)));
}
