#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "owalk/enumeration.hpp"
#include "owalk/mcmc.hpp"

using namespace owalk;

TEST_CASE("non-increasing range proposals are always accepted") {
    Chain chain({2, 0.3, 12, 5}, ChainConfig{});
    for (int t = 0; t < 20000; ++t) {
        StepOutcome out = chain.step();
        if (out.delta_range <= 0) CHECK(out.accepted);
    }
}

TEST_CASE("maintained range matches recount under the proposal stream") {
    Chain chain({2, 0.5, 25, 8}, ChainConfig{});
    for (int t = 0; t < 5000; ++t) {
        chain.step();
        REQUIRE(chain.path().range_size() == chain.path().recount_range());
        REQUIRE(chain.path().n_steps() == 25);
    }
}

TEST_CASE("log weight is exact integer bookkeeping") {
    ModelParams params{2, 0.41, 40, 2};
    Chain chain(params, ChainConfig{});
    for (int t = 0; t < 100000; ++t) chain.step();
    CHECK(chain.log_weight() ==
          static_cast<double>(chain.path().recount_range()) * std::log(params.p));
}

TEST_CASE("sampled range mean matches the enumeration oracle at N=4") {
    ModelParams params{2, 0.5, 4, 31};
    double exact = exact_mu_expectation(
        params, [](const WalkPath& w) { return static_cast<double>(w.range_size()); });
    ChainConfig cfg;
    cfg.sweeps = 400000;
    cfg.burn_in = 10000;
    cfg.thin = 10;
    ChainResult res = run_chain(params, cfg);
    std::vector<double> xs = res.range_series();
    MeanErr m = mean_stderr(xs);
    double se = correlated_stderr(xs, res.tau_range.tau);
    CHECK(std::abs(m.mean - exact) < 4 * se);
}

TEST_CASE("checkpoint round trip resumes bit exactly") {
    ModelParams params{3, 0.6, 30, 17};
    Chain a(params, ChainConfig{});
    for (int t = 0; t < 3000; ++t) a.step();
    std::stringstream ss;
    a.save(ss);
    Chain b({2, 0.5, 0, 1}, ChainConfig{});
    b.load(ss);
    REQUIRE(b.path().steps() == a.path().steps());
    for (int t = 0; t < 2000; ++t) {
        a.step();
        b.step();
    }
    CHECK(a.path().steps() == b.path().steps());
    CHECK(a.path().range_size() == b.path().range_size());
}

TEST_CASE("snake start is a valid self-avoiding path") {
    for (long long N : {5ll, 24ll, 100ll, 1000ll}) {
        WalkPath w = snake_start(2, N);
        CHECK(w.n_steps() == static_cast<std::size_t>(N));
        CHECK(w.range_size() == static_cast<std::size_t>(N + 1));
    }
    WalkPath w3 = snake_start(3, 63);
    CHECK(w3.range_size() == 64);
}

TEST_CASE("conditional obstacle draws avoid the range") {
    ModelParams params{2, 0.5, 30, 4};
    Chain chain(params, ChainConfig{});
    for (int t = 0; t < 1000; ++t) chain.step();
    LatticeSet window = ball_points({origin(2), 35.0});
    Environment env = sample_obstacles_given_path(chain.path(), params, window, 99);
    for (const auto& [q, c] : chain.path().range_multiset()) CHECK(!env.obstacles.contains(q));
    // off-range density near 1-p
    double off_range =
        static_cast<double>(window.size() - chain.path().range_size());
    double density = static_cast<double>(env.obstacles.size()) / off_range;
    CHECK(std::abs(density - 0.5) < 0.05);
    CHECK_THROWS(sample_obstacles_given_path(chain.path(), params,
                                             ball_points({origin(2), 2.0}), 99));
}

TEST_CASE("chain csv has one row per retained sample") {
    ModelParams params{2, 0.5, 10, 1};
    ChainConfig cfg;
    cfg.sweeps = 1000;
    cfg.thin = 100;
    ChainResult res = run_chain(params, cfg);
    CHECK(res.samples.size() == 10);
    std::stringstream ss;
    write_chain_csv(ss, res);
    int lines = 0;
    std::string line;
    while (std::getline(ss, line)) ++lines;
    CHECK(lines == 11);  // header + samples
}
