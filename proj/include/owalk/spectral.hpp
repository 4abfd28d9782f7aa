#ifndef OWALK_SPECTRAL_HPP
#define OWALK_SPECTRAL_HPP

#include <cmath>
#include <unordered_map>
#include <vector>

#include "owalk/environment.hpp"
#include "owalk/lattice_set.hpp"

namespace owalk {

inline constexpr std::size_t kDenseSolveThreshold = 4000;

// Bottom-k eigenpairs of I - Q on a connected finite set, where Q is the
// symmetric substochastic transition matrix of the SRW with rows to outside
// dropped (Dirichlet condition).
struct SpectrumResult {
    std::vector<Point> sites;                      // index -> site, lex order
    std::vector<double> eigenvalues;               // ascending, k_computed entries
    std::vector<std::vector<double>> eigenvectors; // unit l2 norm; first nonnegative
    int k_computed = 0;

    double lambda(int k) const { return eigenvalues.at(static_cast<std::size_t>(k - 1)); }
};

SpectrumResult dirichlet_spectrum(const LatticeSet& domain, int k);

// All eigenvalues of Q itself (dense solve), for parity checks.
std::vector<double> full_q_spectrum(const LatticeSet& domain);

// Killed heat kernel p_n^D(u, .) on D and its external boundary, computed by
// n-fold application of the killed transition operator. Queries apply the
// bipartite parity convention: mismatched parity reads p_{n+1}.
class HeatKernel {
public:
    HeatKernel(const LatticeSet& domain, const Point& u, long long n);

    long long n() const { return n_; }
    const Point& source() const { return u_; }

    double at(const Point& v) const;   // parity convention applied
    double raw(const Point& v) const;  // p_n as stored, no convention

    double interior_mass() const { return interior_mass_; }
    // cumulative mass absorbed at the boundary or exited through steps <= n
    double absorbed_mass() const { return absorbed_mass_; }

    const std::vector<Point>& interior_sites() const { return sites_; }
    double raw_interior(std::size_t idx) const { return cur_[idx]; }

private:
    Point u_;
    long long n_;
    std::vector<Point> sites_;  // interior, lex order
    std::unordered_map<Point, std::size_t, PointHash> index_;
    std::vector<double> cur_, next_;                          // interior mass at n, n+1
    std::unordered_map<Point, double, PointHash> bnd_n_, bnd_n1_;  // boundary hits at n, n+1
    double interior_mass_ = 0.0;
    double absorbed_mass_ = 0.0;
};

struct ScalingConstants {
    int d = 0;
    double p = 0.0;
    double lambda1_continuum = 0.0;  // principal eigenvalue of -(1/2d)Lap, unit-volume ball
    double c_dp = 0.0;
    double rho_coefficient = 0.0;

    double rho_N(long long N) const {
        return rho_coefficient * std::pow(static_cast<double>(N), 1.0 / (d + 2));
    }
};

// Principal Dirichlet eigenvalue of -(1/2d)Lap on the Euclidean ball:
// j_{d/2-1,1}^2 / (2 d radius^2). Only k = 1 is supported.
double continuum_ball_eigenvalue(int d, double radius, int k = 1);

ScalingConstants scaling_constants(int d, double p);

double unit_ball_volume(int d);

struct FaberKrahnResult {
    double lambda_discrete = 0.0;
    double hull_volume = 0.0;       // exact volume of {x : dist_inf(x,T) < 2}
    double lambda_ball_same_volume = 0.0;
    double gap = 0.0;               // lambda_discrete - lambda_ball
};

FaberKrahnResult faber_krahn_gap(const LatticeSet& domain);

// Exact volume of the union of open l-inf balls of radius 2 around the sites.
double continuous_hull_volume(const LatticeSet& domain);

// G_O(u,x): expected visits to B(x,r) up to and including the killing time,
// by a conjugate-gradient solve of (I - Q_{window \ O}) g = b.
double green_visits(const Environment& env, const Point& u, const Point& x, double r);

struct GreenResult {
    double value = 0.0;
    double residual = 0.0;  // ||(I - Q) g - b||_2 of the returned solution
};

GreenResult green_visits_detailed(const Environment& env, const Point& u, const Point& x,
                                  double r);

struct SurvivalBound {
    double log_value = 0.0;  // vol(B(0,rho_N)) log p - N lambda1(B(0,rho_N)) - c rho_N^{d-1}
    double value = 0.0;      // exp(log_value); may underflow to 0
};

SurvivalBound survival_lower_bound(int d, double p, long long N, double c = 1.0);

struct ParityCheckReport {
    double max_asymmetry = 0.0;        // max |q_i + q_{n+1-i}| over Q's spectrum
    double projection_residual = 0.0;  // Q^2 invariance of phi1 * 1_even / 1_odd
};

ParityCheckReport parity_spectrum_check(const LatticeSet& domain);

struct EigenBoundsMeasurement {
    double inradius = 0.0;
    double gap_times_r2 = 0.0;   // (lambda2 - lambda1) R^2
    double sup_times_rd2 = 0.0;  // ||phi1||_inf R^{d/2}
};

EigenBoundsMeasurement eigen_bounds_measurement(const LatticeSet& domain);

}  // namespace owalk

#endif
