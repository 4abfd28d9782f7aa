#ifndef OWALK_ENVIRONMENT_HPP
#define OWALK_ENVIRONMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "owalk/lattice_set.hpp"
#include "owalk/walk.hpp"

namespace owalk {

struct ModelParams {
    int d = 2;
    double p = 0.5;      // site open with probability p
    long long N = 0;     // horizon
    std::uint64_t seed = 1;

    void validate() const {
        if (d < 2) throw std::invalid_argument("ModelParams: d >= 2 required");
        if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("ModelParams: p in (0,1) required");
        if (N < 0) throw std::invalid_argument("ModelParams: N >= 0 required");
    }
};

struct Environment {
    LatticeSet window;
    LatticeSet obstacles;  // subset of window

    bool is_obstacle(const Point& x) const { return obstacles.contains(x); }

    void write(std::ostream& os) const;
    static Environment read(std::istream& is);
};

// Counter-based per-site obstacle rule: pure function of (seed, site), so
// identical sites give identical answers with no materialized window.
bool site_is_obstacle(std::uint64_t seed, double p, const Point& x);

// Materializes the rule on a finite window. Deterministic given the seed;
// independent of iteration order by construction.
Environment sample_environment(const ModelParams& params, const LatticeSet& window);

// Obstacle oracle backed by site_is_obstacle; safe under concurrent queries.
class LazyEnvironment {
public:
    LazyEnvironment(std::uint64_t seed, double p) : seed_(seed), p_(p) {}
    bool is_obstacle(const Point& x) const { return site_is_obstacle(seed_, p_, x); }

private:
    std::uint64_t seed_;
    double p_;
};

struct KillResult {
    bool survived = false;
    long long time = -1;  // valid when !survived
};

// tau_O = min{n >= 0 : S_n in O}, or survived. Throws if the path leaves the
// window (the caller must enlarge it).
KillResult killing_time(const WalkPath& path, const Environment& env);

// P_x(tau_O > n) by n applications of the killed transition operator over the
// l^1-ball of radius n around x. Requires that ball to lie inside env.window.
double survival_dp(const Environment& env, const Point& x, long long n);

}  // namespace owalk

#endif
