#include "owalk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace owalk {

TrulyOpenConfig TrulyOpenConfig::paper_defaults(long long N) {
    double logN = std::log(static_cast<double>(std::max<long long>(N, 2)));
    TrulyOpenConfig cfg;
    cfg.t_surv = static_cast<long long>(std::ceil(std::pow(logN, 5)));
    cfg.threshold = std::exp(-logN * logN);
    return cfg;
}

bool is_truly_open(const Environment& env, const Point& x, const TrulyOpenConfig& cfg) {
    if (cfg.t_surv < 1 || !(cfg.threshold > 0.0 && cfg.threshold <= 1.0))
        throw std::invalid_argument("is_truly_open: bad config");
    return survival_dp(env, x, cfg.t_surv) >= cfg.threshold;
}

LatticeSet truly_open_cluster(const Environment& env, const TrulyOpenConfig& cfg,
                              const BallSpec& confinement) {
    const int d = confinement.center.dim();
    LatticeSet cluster(d);
    Point o = origin(d);
    LatticeSet confined = ball_points(confinement);
    if (!confined.contains(o)) return cluster;
    if (!is_truly_open(env, o, cfg)) return cluster;
    cluster.insert(o);
    std::deque<Point> queue{o};
    while (!queue.empty()) {
        Point p = queue.front();
        queue.pop_front();
        for (int m = 0; m < 2 * d; ++m) {
            Point q = p.shifted(m / 2, m % 2 == 0 ? 1 : -1);
            if (cluster.contains(q) || !confined.contains(q)) continue;
            if (is_truly_open(env, q, cfg)) {
                cluster.insert(q);
                queue.push_back(q);
            }
        }
    }
    return cluster;
}

SkeletalSet skeletal_set(const Environment& env, const Point& x, long long l) {
    if (!env.obstacles.contains(x))
        throw std::invalid_argument("skeletal_set: anchor must be an obstacle");
    SkeletalSet out;
    out.anchor = x;
    out.radius_l = l;
    const double sep = out.separation();
    const double sep_sq = sep * sep;
    const double l_sq = static_cast<double>(l) * static_cast<double>(l);

    // obstacles in B(x,l), ordered by (distance to x, lex) for the greedy pick
    std::vector<Point> remaining;
    for (const Point& y : env.obstacles.members())
        if (static_cast<double>(y.norm2_sq(x)) <= l_sq) remaining.push_back(y);
    std::sort(remaining.begin(), remaining.end(), [&](const Point& a, const Point& b) {
        long long da = a.norm2_sq(x), db = b.norm2_sq(x);
        if (da != db) return da < db;
        return a < b;
    });

    std::vector<bool> removed(remaining.size(), false);
    auto absorb = [&](const Point& c) {
        for (std::size_t i = 0; i < remaining.size(); ++i)
            if (!removed[i] && static_cast<double>(remaining[i].norm2_sq(c)) <= sep_sq)
                removed[i] = true;
    };
    // remaining[0] == x by the sort order
    out.points.push_back(x);
    absorb(x);
    for (std::size_t i = 0; i < remaining.size(); ++i) {
        if (removed[i]) continue;
        out.points.push_back(remaining[i]);
        absorb(remaining[i]);
    }

    const double half_sq = l_sq / 4.0;
    for (const Point& y : out.points)
        if (static_cast<double>(y.norm2_sq(x)) <= half_sq) out.inner_points.push_back(y);
    return out;
}

BalancedRadiusResult balanced_radius(const Environment& env, const Point& x, long long L,
                                     double delta, double rho) {
    if (!obstacle_density_event(env, x, L, delta))
        throw std::invalid_argument("balanced_radius: requires x in O and density < delta");
    const int d = x.dim();
    const double l_min = std::pow(static_cast<double>(L), 5.0 / 6.0);
    BalancedRadiusResult out;
    double l = static_cast<double>(L);
    for (int j = 0; l >= l_min; ++j, l /= 2.0) {
        SkeletalSet sk = skeletal_set(env, x, static_cast<long long>(std::floor(l)));
        double target = rho * std::min(static_cast<double>(sk.points.size()),
                                       delta * std::pow(l, d - 0.5));
        if (static_cast<double>(sk.inner_points.size()) >= target) {
            out.found = true;
            out.j_star = j;
            out.l_star = l;
            out.skeleton_size = sk.points.size();
            out.inner_size = sk.inner_points.size();
            return out;
        }
    }
    return out;  // found == false: claimed range [L^{5/6}, L] failed for (rho, delta)
}

double gamma_rate(long long k, long long l, int d, double c0) {
    if (k < 0 || l < 1 || !(c0 > 0.0 && c0 < 1.0))
        throw std::invalid_argument("gamma_rate: bad arguments");
    if (k == 0) return 0.0;
    if (d == 2) {
        double arg = std::pow(c0 * static_cast<double>(l), 1.5) / (2.0 * static_cast<double>(k));
        if (arg <= 1.0) return 0.0;
        return 1.0 / std::log(arg);
    }
    double ld = static_cast<double>(l), kd = static_cast<double>(k);
    return std::pow(ld, 2.0 - d) * kd /
           (1.0 + std::pow(ld, (2.0 - d) / (2.0 * d)) * std::pow(kd, 2.0 / d));
}

namespace {

bool in_closed_inner(const Point& s, const Point& center, double inner_r) {
    double r_sq = inner_r * inner_r;
    if (static_cast<double>(s.norm2_sq(center)) <= r_sq) return true;
    // external boundary of the inner ball
    for (int m = 0; m < 2 * s.dim(); ++m) {
        Point q = s.shifted(m / 2, m % 2 == 0 ? 1 : -1);
        if (static_cast<double>(q.norm2_sq(center)) <= r_sq) return true;
    }
    return false;
}

}  // namespace

CrossingDecomposition crossing_decomposition(const WalkPath& path, const Point& center,
                                             double inner_r, double outer_r) {
    if (!(inner_r < outer_r))
        throw std::invalid_argument("crossing_decomposition: inner_r < outer_r required");
    CrossingDecomposition out;
    out.center = center;
    out.inner_radius = inner_r;
    out.outer_radius = outer_r;
    const long long N = static_cast<long long>(path.n_steps());
    const auto& pos = path.positions();
    const double outer_sq = outer_r * outer_r;

    long long n = 0;
    while (true) {
        // sigma_k: next entry into the closed inner ball (first one allows n = 0)
        long long sigma = N;
        for (; n <= N; ++n) {
            if (in_closed_inner(pos[static_cast<std::size_t>(n)], center, inner_r)) {
                sigma = n;
                break;
            }
        }
        sigma = std::min(sigma, N);
        // tau_k: next exit from the outer ball, strictly after sigma_k
        long long tau = N;
        for (long long m = sigma + 1; m <= N; ++m) {
            if (static_cast<double>(pos[static_cast<std::size_t>(m)].norm2_sq(center)) > outer_sq) {
                tau = m;
                break;
            }
        }
        out.sigma.push_back(sigma);
        out.tau.push_back(tau);
        out.durations.push_back(tau - sigma);
        if (tau >= N) break;
        n = tau + 1;
    }
    out.K = 0;
    for (std::size_t k = 0; k < out.durations.size(); ++k)
        if (out.durations[k] > 0) out.K = static_cast<long long>(k + 1);
    return out;
}

bool obstacle_density_event(const Environment& env, const Point& x, long long l, double delta) {
    if (!env.obstacles.contains(x)) return false;
    LatticeSet ball = ball_points({x, static_cast<double>(l)});
    std::size_t count = 0;
    for (const Point& y : ball.members())
        if (env.obstacles.contains(y)) ++count;
    return static_cast<double>(count) < delta * static_cast<double>(ball.size());
}

CoveringDeficit ball_covering_deficit(const LatticeSet& range, const Point& center, double r) {
    LatticeSet ball = ball_points({center, r});
    CoveringDeficit out;
    for (const Point& y : ball.members())
        if (!range.contains(y)) ++out.missed;
    out.fraction = ball.empty() ? 0.0
                                : static_cast<double>(out.missed) /
                                      static_cast<double>(ball.size());
    return out;
}

std::size_t boundary_size(const LatticeSet& range) {
    if (range.empty()) throw std::invalid_argument("boundary_size: empty range");
    return external_boundary(range).size();
}

}  // namespace owalk
