#ifndef OWALK_GEOMETRY_HPP
#define OWALK_GEOMETRY_HPP

#include <vector>

#include "owalk/environment.hpp"
#include "owalk/walk.hpp"

namespace owalk {

struct TrulyOpenConfig {
    long long t_surv = 1;      // survival horizon
    double threshold = 1.0;    // survival-probability cutoff, in (0,1]

    // (log N)^5 horizon and exp{-(log N)^2} cutoff; astronomically demanding
    // at desk scale, so experiments substitute documented knobs.
    static TrulyOpenConfig paper_defaults(long long N);
};

struct SkeletalSet {
    Point anchor;
    long long radius_l = 0;
    std::vector<Point> points;        // anchor first, then greedy order
    std::vector<Point> inner_points;  // points within l/2 of the anchor

    double separation() const {       // l^{1/2d}
        return std::pow(static_cast<double>(radius_l), 1.0 / (2.0 * anchor.dim()));
    }
};

struct CrossingDecomposition {
    Point center;
    double inner_radius = 0.0;
    double outer_radius = 0.0;
    std::vector<long long> sigma;
    std::vector<long long> tau;
    long long K = 0;                    // crossings with positive duration
    std::vector<long long> durations;   // tau_k - sigma_k
};

struct BalancedRadiusResult {
    bool found = false;    // false reports a failure of the claimed radius range
    int j_star = -1;
    double l_star = 0.0;
    std::size_t skeleton_size = 0;
    std::size_t inner_size = 0;
};

// survival_dp(env, x, t_surv) >= threshold
bool is_truly_open(const Environment& env, const Point& x, const TrulyOpenConfig& cfg);

// Component of truly-open sites inside the confinement ball containing the
// origin; empty when the origin is not truly-open.
LatticeSet truly_open_cluster(const Environment& env, const TrulyOpenConfig& cfg,
                              const BallSpec& confinement);

// Greedy l^{1/2d}-separated covering subset of O inside B(x,l), anchored at x.
SkeletalSet skeletal_set(const Environment& env, const Point& x, long long l);

// Smallest j >= 0 with l = L/2^j satisfying
// |X_l^o| >= rho * min(|X_l|, delta * l^{d-1/2}); search stops below L^{5/6}.
BalancedRadiusResult balanced_radius(const Environment& env, const Point& x, long long L,
                                     double delta, double rho);

// Per-(c0 l)^2-steps obstacle-hitting rate as a function of skeleton size.
double gamma_rate(long long k, long long l, int d, double c0);

CrossingDecomposition crossing_decomposition(const WalkPath& path, const Point& center,
                                             double inner_r, double outer_r);

// x in O and |O cap B(x,l)| / |B(x,l)| < delta
bool obstacle_density_event(const Environment& env, const Point& x, long long l, double delta);

struct CoveringDeficit {
    long long missed = 0;
    double fraction = 0.0;
};

CoveringDeficit ball_covering_deficit(const LatticeSet& range, const Point& center, double r);

std::size_t boundary_size(const LatticeSet& range);

}  // namespace owalk

#endif
