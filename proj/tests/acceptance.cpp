// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "owalk/bessel.hpp"
#include "owalk/enumeration.hpp"
#include "owalk/experiments.hpp"
#include "owalk/spectral.hpp"
#include "owalk/svg.hpp"

using namespace owalk;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int num, const std::string& name, bool pass, const std::string& details,
            double seconds) {
    std::printf("%s  criterion %2d: %-28s %s (%.1f s)\n", pass ? "PASS" : "FAIL", num,
                name.c_str(), details.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

template <typename F>
void run(int num, const std::string& name, F&& f) {
    auto t0 = Clock::now();
    bool pass = false;
    std::string details;
    try {
        pass = f(details);
    } catch (const std::exception& e) {
        details = std::string("exception: ") + e.what();
    }
    report(num, name, pass, details, std::chrono::duration<double>(Clock::now() - t0).count());
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// 1. oracle exactness at N = 0, 1, 2
bool c1(std::string& det) {
    double z0 = exact_partition_function({2, 0.5, 0, 1});
    double z1 = exact_partition_function({2, 0.5, 1, 1});
    double z2 = exact_partition_function({2, 0.5, 2, 1});
    det = "Z0=" + fmt(z0) + " Z1=" + fmt(z1) + " Z2=" + fmt(z2) + " (want 1/2, 1/4, 5/32)";
    return z0 == 0.5 && z1 == 0.25 && z2 == 5.0 / 32.0;
}

// 2. MCMC path law vs exact mu_N at N=6: TV <= 0.02 after 1e7 steps
bool c2(std::string& det) {
    const long long N = 6;
    std::vector<double> exact(4096, 0.0);
    double z = 0.0;
    enumerate_paths(2, N, [&](const WalkPath& path) {
        std::size_t code = 0;
        for (auto m : path.steps()) code = code * 4 + m;
        double w = std::pow(0.5, static_cast<double>(path.range_size()));
        exact[code] = w;
        z += w;
    });
    for (double& w : exact) w /= z;

    Chain chain({2, 0.5, N, 20260824}, ChainConfig{});
    std::vector<double> counts(4096, 0.0);
    const long long steps = 10000000;
    for (long long t = 0; t < steps; ++t) {
        chain.step();
        std::size_t code = 0;
        for (auto m : chain.path().steps()) code = code * 4 + m;
        counts[code] += 1.0;
    }
    double tv = 0.0;
    for (std::size_t i = 0; i < 4096; ++i)
        tv += std::abs(counts[i] / static_cast<double>(steps) - exact[i]);
    tv *= 0.5;
    det = "TV=" + fmt(tv) + " (<= 0.02)";
    return tv <= 0.02;
}

// 3. sampled E|range| at N=10 within 3 standard errors of the oracle
bool c3(std::string& det) {
    ModelParams params{2, 0.5, 10, 99};
    double exact = exact_mu_expectation(
        params, [](const WalkPath& w) { return static_cast<double>(w.range_size()); });
    ChainConfig cfg;
    cfg.sweeps = 1000000;
    cfg.burn_in = 20000;
    cfg.thin = 10;
    ChainResult res = run_chain(params, cfg);
    std::vector<double> xs = res.range_series();
    MeanErr m = mean_stderr(xs);
    double se = correlated_stderr(xs, res.tau_range.tau);
    det = "mcmc=" + fmt(m.mean) + " exact=" + fmt(exact) + " se=" + fmt(se);
    return std::abs(m.mean - exact) <= 3.0 * se;
}

// 4. |lambda1_discrete - j01^2/(4R^2)| R^3 bounded: max/min ratio <= 3
bool c4(std::string& det) {
    double j0 = bessel_first_zero(0.0);
    double lo = 1e300, hi = 0.0;
    for (double R : {10.0, 15.0, 20.0, 30.0, 40.0}) {
        double lam = dirichlet_spectrum(ball_points({origin(2), R}), 1).eigenvalues[0];
        double scaled = std::abs(lam - j0 * j0 / (4.0 * R * R)) * R * R * R;
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
    }
    det = "err*R^3 in [" + fmt(lo) + "," + fmt(hi) + "] ratio=" + fmt(hi / lo);
    return hi / lo <= 3.0;
}

// 5. continuum constants at d=2, p=1/2
bool c5(std::string& det) {
    ScalingConstants sc = scaling_constants(2, 0.5);
    det = "lambda1=" + fmt(sc.lambda1_continuum) + " c=" + fmt(sc.c_dp) +
          " rho_coeff=" + fmt(sc.rho_coefficient);
    return std::abs(sc.lambda1_continuum - 4.5421036) <= 1e-5 &&
           std::abs(sc.c_dp - 3.5486) <= 1e-3 && std::abs(sc.rho_coefficient - 1.5999) <= 1e-3;
}

// 6. spectrum of Q symmetric about 0; even/odd invariant subspaces
bool c6(std::string& det) {
    ParityCheckReport rep = parity_spectrum_check(ball_points({origin(2), 15.0}));
    det = "asymmetry=" + fmt(rep.max_asymmetry) + " residual=" + fmt(rep.projection_residual);
    return rep.max_asymmetry <= 1e-9 && rep.projection_residual <= 1e-8;
}

// 7. Faber-Krahn: lambda_T >= lambda_ball(vol hull) - 1e-3 on 50 random animals
bool c7(std::string& det) {
    std::mt19937_64 rng(2024);
    int violations = 0;
    double worst = 1e300;
    LatticeSet inner = ball_points({origin(2), 10.0});
    LatticeSet outer = ball_points({origin(2), 15.0});
    for (int trial = 0; trial < 50; ++trial) {
        LatticeSet t = inner;
        // grow a random connected animal between the two balls
        std::vector<Point> frontier = external_boundary(t).sorted_points();
        std::uniform_int_distribution<std::size_t> pick;
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        int target = static_cast<int>(unif(rng) * (outer.size() - inner.size()));
        for (int added = 0; added < target && !frontier.empty(); ++added) {
            std::size_t i = std::uniform_int_distribution<std::size_t>(
                0, frontier.size() - 1)(rng);
            Point q = frontier[i];
            frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(i));
            if (t.contains(q) || !outer.contains(q)) continue;
            t.insert(q);
            for (int m = 0; m < 4; ++m) {
                Point nb = q.shifted(m / 2, m % 2 == 0 ? 1 : -1);
                if (!t.contains(nb) && outer.contains(nb)) frontier.push_back(nb);
            }
        }
        FaberKrahnResult fk = faber_krahn_gap(t);
        worst = std::min(worst, fk.gap);
        if (fk.gap < -1e-3) ++violations;
    }
    det = "violations=" + std::to_string(violations) + " worst_gap=" + fmt(worst);
    return violations == 0;
}

// 8. green_visits vs Monte Carlo on 20 environments; solver residual <= 1e-10
bool c8(std::string& det) {
    std::mt19937_64 rng(777);
    int tested = 0;
    double worst_dev = 0.0, worst_res = 0.0;
    bool ok = true;
    for (std::uint64_t s = 1; tested < 20 && s <= 60; ++s) {
        ModelParams params{2, 0.35, 0, 5000 + s};
        LatticeSet window = ball_points({origin(2), 24.0});
        Environment env = sample_environment(params, window);
        if (env.obstacles.contains(origin(2))) continue;
        ++tested;
        Point x{1, 0};
        double r = 2.0;
        GreenResult g = green_visits_detailed(env, origin(2), x, r);
        worst_res = std::max(worst_res, g.residual);

        const int n_walks = 100000;
        double sum = 0.0, sum_sq = 0.0;
        std::uniform_int_distribution<int> mv(0, 3);
        double r_sq = r * r;
        for (int w = 0; w < n_walks; ++w) {
            Point pos = origin(2);
            double visits = 0.0;
            while (true) {
                if (static_cast<double>(pos.norm2_sq(x)) <= r_sq) visits += 1.0;
                if (env.obstacles.contains(pos)) break;
                int m = mv(rng);
                pos = pos.shifted(m / 2, m % 2 == 0 ? 1 : -1);
                if (!env.window.contains(pos)) break;  // mass < 1e-9 by the solver guard
            }
            sum += visits;
            sum_sq += visits * visits;
        }
        double mean = sum / n_walks;
        double var = std::max(sum_sq / n_walks - mean * mean, 1e-12);
        double se = std::sqrt(var / n_walks);
        double dev = std::abs(mean - g.value) / se;
        worst_dev = std::max(worst_dev, dev);
        if (dev > 4.0) ok = false;
    }
    det = "envs=" + std::to_string(tested) + " worst_dev=" + fmt(worst_dev) +
          " sigma, worst_residual=" + fmt(worst_res);
    return ok && tested == 20 && worst_res <= 1e-10;
}

// 9. heat-kernel symmetry / Chapman-Kolmogorov / mass conservation <= 1e-10
bool c9(std::string& det) {
    std::mt19937_64 rng(13);
    double worst = 0.0;
    std::uniform_int_distribution<int> mv(0, 3);
    for (int trial = 0; trial < 20; ++trial) {
        // random connected blob with at most 400 sites
        LatticeSet dom(2);
        Point p = origin(2);
        dom.insert(p);
        while (dom.size() < 350) {
            int m = mv(rng);
            Point q = p.shifted(m / 2, m % 2 == 0 ? 1 : -1);
            if (q.norm_inf(origin(2)) > 12) {
                p = origin(2);
                continue;
            }
            dom.insert(q);
            p = q;
        }
        auto pts = dom.sorted_points();
        Point u = pts[trial % pts.size()];
        Point v = pts[(7 * trial + 3) % pts.size()];
        const long long n = 6, m = 5;
        HeatKernel hu(dom, u, n);
        HeatKernel hv(dom, v, n);
        worst = std::max(worst, std::abs(hu.raw(v) - hv.raw(u)));
        worst = std::max(worst, std::abs(hu.interior_mass() + hu.absorbed_mass() - 1.0));
        HeatKernel hm(dom, u, m);
        HeatKernel hmn(dom, u, m + n);
        double conv = 0.0;
        for (const Point& w : pts) {
            double pm = hm.raw(w);
            if (pm == 0.0) continue;
            conv += pm * HeatKernel(dom, w, n).raw(v);
        }
        worst = std::max(worst, std::abs(conv - hmn.raw(v)));
    }
    det = "worst discrepancy=" + fmt(worst);
    return worst <= 1e-10;
}

// 10. scaling trend: slope in [0.40, 0.60], unflagged; 0.8 rho covering improves
bool c10(std::string& det) {
    ExperimentConfig cfg;
    cfg.model = {2, 0.5, 0, 4242};
    cfg.N_grid = {10000, 40000, 160000};
    cfg.chains = 2;
    cfg.sweeps = 12000000;
    cfg.burn_in = 1000000;
    cfg.thin = 500;
    cfg.chain.coiled_start = true;
    cfg.segment_len_sqrt_coeff = 1.0;

    std::vector<ScalingRow> rows = run_scaling_experiment(cfg);
    bool flagged = false;
    std::vector<PlotPoint> pts;
    for (const auto& r : rows) {
        flagged = flagged || r.flagged;
        pts.push_back({static_cast<double>(r.N), r.range.mean, r.range.err, r.flagged});
    }
    LineFit fit = loglog_fit(pts);
    bool covering_improves = rows[0].deficit08.mean >= rows[1].deficit08.mean &&
                             rows[1].deficit08.mean >= rows[2].deficit08.mean;
    det = "slope=" + fmt(fit.slope) + "+-" + fmt(fit.slope_err) +
          " deficit08=" + fmt(rows[0].deficit08.mean) + "/" + fmt(rows[1].deficit08.mean) +
          "/" + fmt(rows[2].deficit08.mean);
    for (const auto& r : rows)
        if (r.flagged) det += " [flagged N=" + std::to_string(r.N) + " tau=" + fmt(r.max_tau) + "]";
    return fit.slope >= 0.40 && fit.slope <= 0.60 && !flagged && covering_improves;
}

// 11. skeletal separation/covering on 1000 environments; balanced radius floor
bool c11(std::string& det) {
    std::mt19937_64 seeds(31337);
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        ModelParams params{2, 0.9, 0, seeds()};
        const long long l = 20;
        LatticeSet window = ball_points({origin(2), static_cast<double>(l) + 1});
        Environment env = sample_environment(params, window);
        if (env.obstacles.empty()) continue;
        Point anchor = env.obstacles.sorted_points().front();
        SkeletalSet sk = skeletal_set(env, anchor, l);
        double sep = sk.separation();
        for (std::size_t i = 1; i < sk.points.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (sk.points[i].norm2(sk.points[j]) <= sep - 1e-12) ++violations;
        for (const Point& y : env.obstacles.members()) {
            if (y.norm2(anchor) > static_cast<double>(l)) continue;
            double dmin = 1e300;
            for (const Point& q : sk.points) dmin = std::min(dmin, y.norm2(q));
            if (dmin > sep + 1e-12) ++violations;
        }
    }
    int bal_failures = 0, bal_tested = 0;
    const long long L = 128;
    for (int trial = 0; trial < 50; ++trial) {
        ModelParams params{2, 0.995, 0, seeds()};
        LatticeSet window = ball_points({origin(2), static_cast<double>(L) + 1});
        Environment env = sample_environment(params, window);
        if (env.obstacles.empty()) continue;
        Point anchor = env.obstacles.sorted_points().front();
        if (!obstacle_density_event(env, anchor, L, 0.01)) continue;
        ++bal_tested;
        BalancedRadiusResult res = balanced_radius(env, anchor, L, 0.01, 0.01);
        if (!res.found || res.l_star < std::pow(static_cast<double>(L), 5.0 / 6.0) - 1e-9)
            ++bal_failures;
    }
    det = "skeletal violations=" + std::to_string(violations) +
          " balanced tested=" + std::to_string(bal_tested) +
          " failures=" + std::to_string(bal_failures);
    return violations == 0 && bal_tested > 0 && bal_failures == 0;
}

// 12. quick validation suite end-to-end in <= 5 minutes
bool c12(std::string& det) {
    auto t0 = Clock::now();
    ValidationReport rep = run_validation_suite("quick", 1);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    int failed = 0;
    std::string names;
    for (const auto& chk : rep.checks)
        if (!chk.pass) {
            ++failed;
            names += " " + chk.name;
        }
    det = std::to_string(rep.checks.size()) + " checks, " + std::to_string(failed) +
          " failed" + names + ", " + fmt(secs) + " s";
    return rep.all_pass && secs <= 300.0;
}

}  // namespace

int main() {
    run(1, "oracle exactness", c1);
    run(2, "sampler path law (TV)", c2);
    run(3, "sampler moment check", c3);
    run(4, "eigenvalue rate R^3", c4);
    run(5, "continuum constants", c5);
    run(6, "spectral parity structure", c6);
    run(7, "faber-krahn property", c7);
    run(8, "green function vs MC", c8);
    run(9, "heat-kernel laws", c9);
    run(10, "scaling trend", c10);
    run(11, "skeletal invariants", c11);
    run(12, "quick validation suite", c12);
    std::printf("%d of 12 criteria passed\n", 12 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
