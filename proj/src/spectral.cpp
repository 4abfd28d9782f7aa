#include "owalk/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "owalk/bessel.hpp"

namespace owalk {

namespace {

struct SiteGraph {
    std::vector<Point> sites;  // lex order
    std::unordered_map<Point, std::size_t, PointHash> index;
    std::vector<std::vector<std::size_t>> nbrs;  // neighbors inside the set
    int d = 0;

    explicit SiteGraph(const LatticeSet& domain) {
        d = domain.dim();
        sites = domain.sorted_points();
        index.reserve(sites.size());
        for (std::size_t i = 0; i < sites.size(); ++i) index.emplace(sites[i], i);
        nbrs.resize(sites.size());
        for (std::size_t i = 0; i < sites.size(); ++i) {
            for (int m = 0; m < 2 * d; ++m) {
                Point q = sites[i].shifted(m / 2, m % 2 == 0 ? 1 : -1);
                auto it = index.find(q);
                if (it != index.end()) nbrs[i].push_back(it->second);
            }
        }
    }

    // y = Q x, Q = (1/2d) adjacency restricted to the set
    void apply_q(const std::vector<double>& x, std::vector<double>& y) const {
        const double inv = 1.0 / (2.0 * d);
        for (std::size_t i = 0; i < sites.size(); ++i) {
            double s = 0.0;
            for (std::size_t j : nbrs[i]) s += x[j];
            y[i] = inv * s;
        }
    }
};

void fix_perron_sign(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    if (s < 0.0)
        for (double& x : v) x = -x;
}

SpectrumResult dense_spectrum(const SiteGraph& g, int k) {
    const std::size_t n = g.sites.size();
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    const double inv = 1.0 / (2.0 * g.d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : g.nbrs[i]) Q(static_cast<Eigen::Index>(i),
                                         static_cast<Eigen::Index>(j)) = inv;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dirichlet_spectrum: dense eigensolve failed");

    SpectrumResult out;
    out.sites = g.sites;
    out.k_computed = k;
    // bottom-k of I - Q are 1 - (top-k of Q)
    for (int kk = 0; kk < k; ++kk) {
        auto col = static_cast<Eigen::Index>(n) - 1 - kk;
        out.eigenvalues.push_back(1.0 - es.eigenvalues()(col));
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = es.eigenvectors()(static_cast<Eigen::Index>(i), col);
        out.eigenvectors.push_back(std::move(v));
    }
    fix_perron_sign(out.eigenvectors[0]);
    return out;
}

// Lanczos with full reorthogonalization for the top-k eigenpairs of Q.
SpectrumResult lanczos_spectrum(const SiteGraph& g, int k, double tol = 1e-9) {
    const std::size_t n = g.sites.size();
    const std::size_t m_max = std::min<std::size_t>(n, 600);

    std::vector<std::vector<double>> basis;
    std::vector<double> alpha, beta;
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss;

    std::vector<double> v(n), w(n);
    for (double& x : v) x = gauss(rng);
    double nv = 0;
    for (double x : v) nv += x * x;
    nv = std::sqrt(nv);
    for (double& x : v) x /= nv;
    basis.push_back(v);

    SpectrumResult out;
    out.sites = g.sites;
    out.k_computed = k;

    for (std::size_t m = 0; m < m_max; ++m) {
        g.apply_q(basis[m], w);
        double a = 0;
        for (std::size_t i = 0; i < n; ++i) a += basis[m][i] * w[i];
        alpha.push_back(a);
        for (std::size_t i = 0; i < n; ++i) w[i] -= a * basis[m][i];
        if (m > 0)
            for (std::size_t i = 0; i < n; ++i) w[i] -= beta[m - 1] * basis[m - 1][i];
        // full reorthogonalization
        for (const auto& q : basis) {
            double dp = 0;
            for (std::size_t i = 0; i < n; ++i) dp += q[i] * w[i];
            for (std::size_t i = 0; i < n; ++i) w[i] -= dp * q[i];
        }
        double b = 0;
        for (double x : w) b += x * x;
        b = std::sqrt(b);

        const std::size_t mm = m + 1;
        bool check_now = (mm >= static_cast<std::size_t>(k) + 2 && mm % 20 == 0) ||
                         b < 1e-14 || mm == m_max;
        if (check_now) {
            Eigen::MatrixXd T = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(mm),
                                                      static_cast<Eigen::Index>(mm));
            for (std::size_t i = 0; i < mm; ++i) {
                T(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = alpha[i];
                if (i + 1 < mm) {
                    T(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = beta[i];
                    T(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = beta[i];
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
            bool converged = true;
            std::vector<std::vector<double>> ritz_vecs;
            std::vector<double> ritz_vals;
            for (int kk = 0; kk < k; ++kk) {
                auto col = static_cast<Eigen::Index>(mm) - 1 - kk;
                double theta = es.eigenvalues()(col);
                std::vector<double> y(n, 0.0);
                for (std::size_t j = 0; j < mm; ++j) {
                    double c = es.eigenvectors()(static_cast<Eigen::Index>(j), col);
                    for (std::size_t i = 0; i < n; ++i) y[i] += c * basis[j][i];
                }
                // residual ||Q y - theta y||
                std::vector<double> qy(n);
                g.apply_q(y, qy);
                double res = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    double r = qy[i] - theta * y[i];
                    res += r * r;
                }
                if (std::sqrt(res) > tol) converged = false;
                ritz_vals.push_back(1.0 - theta);
                ritz_vecs.push_back(std::move(y));
            }
            if (converged || b < 1e-14 || mm == m_max) {
                if (!converged && b >= 1e-14)
                    throw std::runtime_error("dirichlet_spectrum: Lanczos failed to converge");
                out.eigenvalues = ritz_vals;
                out.eigenvectors = ritz_vecs;
                for (auto& y : out.eigenvectors) {
                    double norm = 0;
                    for (double x : y) norm += x * x;
                    norm = std::sqrt(norm);
                    for (double& x : y) x /= norm;
                }
                fix_perron_sign(out.eigenvectors[0]);
                return out;
            }
        }
        if (b < 1e-14) break;
        beta.push_back(b);
        for (double& x : w) x /= b;
        basis.push_back(w);
    }
    throw std::runtime_error("dirichlet_spectrum: Lanczos did not converge");
}

}  // namespace

SpectrumResult dirichlet_spectrum(const LatticeSet& domain, int k) {
    if (domain.empty()) throw std::invalid_argument("dirichlet_spectrum: empty domain");
    if (k < 1 || static_cast<std::size_t>(k) > domain.size())
        throw std::invalid_argument("dirichlet_spectrum: k out of range");
    if (!is_connected(domain))
        throw std::invalid_argument("dirichlet_spectrum: domain is disconnected");
    SiteGraph g(domain);
    if (domain.size() <= kDenseSolveThreshold) return dense_spectrum(g, k);
    return lanczos_spectrum(g, k);
}

std::vector<double> full_q_spectrum(const LatticeSet& domain) {
    if (!is_connected(domain))
        throw std::invalid_argument("full_q_spectrum: domain is disconnected");
    SiteGraph g(domain);
    const std::size_t n = g.sites.size();
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    const double inv = 1.0 / (2.0 * g.d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : g.nbrs[i]) Q(static_cast<Eigen::Index>(i),
                                         static_cast<Eigen::Index>(j)) = inv;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q, Eigen::EigenvaluesOnly);
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
    return vals;
}

HeatKernel::HeatKernel(const LatticeSet& domain, const Point& u, long long n)
    : u_(u), n_(n) {
    const int d = domain.dim();
    LatticeSet bnd = external_boundary(domain);
    if (!domain.contains(u) && !bnd.contains(u))
        throw std::invalid_argument("heat_kernel: source outside domain and its boundary");

    sites_ = domain.sorted_points();
    index_.reserve(sites_.size());
    for (std::size_t i = 0; i < sites_.size(); ++i) index_.emplace(sites_[i], i);

    cur_.assign(sites_.size(), 0.0);
    next_.assign(sites_.size(), 0.0);
    const double inv = 1.0 / (2.0 * d);

    // one step from a point mass at v with weight w: interior mass propagates
    // next step, boundary/exterior mass is absorbed
    auto do_step = [&](std::vector<double>& cur, std::vector<double>& nxt,
                       std::unordered_map<Point, double, PointHash>& bnd_hits) {
        std::fill(nxt.begin(), nxt.end(), 0.0);
        bnd_hits.clear();
        for (std::size_t i = 0; i < sites_.size(); ++i) {
            double w = cur[i];
            if (w == 0.0) continue;
            for (int m = 0; m < 2 * d; ++m) {
                Point q = sites_[i].shifted(m / 2, m % 2 == 0 ? 1 : -1);
                auto it = index_.find(q);
                if (it != index_.end())
                    nxt[it->second] += inv * w;
                else
                    bnd_hits[q] += inv * w;
            }
        }
    };

    std::unordered_map<Point, double, PointHash> bnd_step;
    if (n == 0) {
        if (domain.contains(u))
            cur_[index_.at(u)] = 1.0;
        else
            bnd_n_[u] = 1.0;
    } else {
        // step 1 propagates from u regardless of membership (only S_1..S_{n-1}
        // are constrained to D)
        std::fill(cur_.begin(), cur_.end(), 0.0);
        for (int m = 0; m < 2 * d; ++m) {
            Point q = u.shifted(m / 2, m % 2 == 0 ? 1 : -1);
            auto it = index_.find(q);
            if (it != index_.end())
                cur_[it->second] += inv;
            else
                bnd_step[q] += inv;
        }
        for (const auto& [pt, w] : bnd_step) absorbed_mass_ += w;
        if (n == 1) bnd_n_ = bnd_step;
        for (long long s = 2; s <= n; ++s) {
            do_step(cur_, next_, bnd_step);
            cur_.swap(next_);
            for (const auto& [pt, w] : bnd_step) absorbed_mass_ += w;
            if (s == n) bnd_n_ = bnd_step;
        }
    }
    // one extra step for the parity convention
    if (n == 0) {
        // p_1 from a point mass at u, even when u sits on the boundary
        for (int m = 0; m < 2 * d; ++m) {
            Point q = u.shifted(m / 2, m % 2 == 0 ? 1 : -1);
            auto it = index_.find(q);
            if (it != index_.end())
                next_[it->second] += inv;
            else
                bnd_n1_[q] += inv;
        }
    } else {
        std::vector<double> extra(sites_.size());
        std::vector<double> cur_copy = cur_;
        do_step(cur_copy, extra, bnd_n1_);
        next_ = extra;
    }

    for (double w : cur_) interior_mass_ += w;
}

double HeatKernel::raw(const Point& v) const {
    auto it = index_.find(v);
    if (it != index_.end()) return cur_[it->second];
    auto bt = bnd_n_.find(v);
    return bt != bnd_n_.end() ? bt->second : 0.0;
}

double HeatKernel::at(const Point& v) const {
    bool odd = (n_ + u_.norm1(v)) % 2 != 0;
    if (!odd) return raw(v);
    auto it = index_.find(v);
    if (it != index_.end()) return next_[it->second];
    auto bt = bnd_n1_.find(v);
    return bt != bnd_n1_.end() ? bt->second : 0.0;
}

double unit_ball_volume(int d) {
    return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double continuum_ball_eigenvalue(int d, double radius, int k) {
    if (k != 1)
        throw std::invalid_argument("continuum_ball_eigenvalue: only k = 1 supported");
    if (!(radius > 0)) throw std::invalid_argument("continuum_ball_eigenvalue: radius > 0");
    double j = bessel_first_zero(d / 2.0 - 1.0);
    return j * j / (2.0 * d * radius * radius);
}

ScalingConstants scaling_constants(int d, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("scaling_constants: p in (0,1)");
    ScalingConstants sc;
    sc.d = d;
    sc.p = p;
    double r_unit = std::pow(unit_ball_volume(d), -1.0 / d);  // radius of the unit-volume ball
    sc.lambda1_continuum = continuum_ball_eigenvalue(d, r_unit);
    double logq = std::log(1.0 / p);
    sc.c_dp = 0.5 * (d + 2) * std::pow(logq, 2.0 / (d + 2)) *
              std::pow(2.0 * sc.lambda1_continuum / d, static_cast<double>(d) / (d + 2));
    sc.rho_coefficient = std::pow(2.0 * sc.lambda1_continuum / (d * logq), 1.0 / (d + 2));
    return sc;
}

double continuous_hull_volume(const LatticeSet& domain) {
    // dist_inf(x,T) < 2 is a union of open cubes (c-2, c+2)^d with integer
    // corners, hence a union of unit cells; cell [k,k+1)^d is covered iff
    // k_i in [c_i-2, c_i+1] for some c in T.
    const int d = domain.dim();
    std::unordered_set<Point, PointHash> cells;
    for (const Point& c : domain.members()) {
        Point k(d);
        std::vector<int> off(static_cast<std::size_t>(d), -2);
        while (true) {
            for (int i = 0; i < d; ++i) k[i] = c[i] + off[static_cast<std::size_t>(i)];
            cells.insert(k);
            int i = 0;
            for (; i < d; ++i) {
                if (off[static_cast<std::size_t>(i)] < 1) {
                    ++off[static_cast<std::size_t>(i)];
                    break;
                }
                off[static_cast<std::size_t>(i)] = -2;
            }
            if (i == d) break;
        }
    }
    return static_cast<double>(cells.size());
}

FaberKrahnResult faber_krahn_gap(const LatticeSet& domain) {
    FaberKrahnResult out;
    SpectrumResult sp = dirichlet_spectrum(domain, 1);
    out.lambda_discrete = sp.eigenvalues[0];
    out.hull_volume = continuous_hull_volume(domain);
    const int d = domain.dim();
    double radius = std::pow(out.hull_volume / unit_ball_volume(d), 1.0 / d);
    out.lambda_ball_same_volume = continuum_ball_eigenvalue(d, radius);
    out.gap = out.lambda_discrete - out.lambda_ball_same_volume;
    return out;
}

double green_visits(const Environment& env, const Point& u, const Point& x, double r) {
    return green_visits_detailed(env, u, x, r).value;
}

GreenResult green_visits_detailed(const Environment& env, const Point& u, const Point& x,
                                  double r) {
    const int d = env.window.dim();
    if (!env.window.contains(u)) throw std::invalid_argument("green_visits: u outside window");
    const double r_sq = r * r;
    auto in_ball = [&](const Point& q) {
        return static_cast<double>(q.norm2_sq(x)) <= r_sq;
    };
    LatticeSet target_ball = ball_points({x, r});
    for (const Point& q : target_ball.members())
        if (!env.window.contains(q))
            throw std::invalid_argument("green_visits: B(x,r) not contained in window");

    if (env.obstacles.contains(u)) return {in_ball(u) ? 1.0 : 0.0, 0.0};

    // open sites only
    LatticeSet open(d);
    for (const Point& q : env.window.members())
        if (!env.obstacles.contains(q)) open.insert(q);
    SiteGraph g(open);
    const std::size_t n = g.sites.size();
    const double inv = 1.0 / (2.0 * d);

    auto solve = [&](const std::vector<double>& b, double tol) {
        // CG on (I - Q), SPD on a finite domain with Dirichlet loss
        std::vector<double> gvec(n, 0.0), res = b, pdir = b, ap(n);
        double rs = 0;
        for (double v : res) rs += v * v;
        double b_norm = std::sqrt(rs);
        if (b_norm == 0) return gvec;
        for (std::size_t it = 0; it < 20 * n + 100; ++it) {
            g.apply_q(pdir, ap);
            for (std::size_t i = 0; i < n; ++i) ap[i] = pdir[i] - ap[i];
            double pap = 0;
            for (std::size_t i = 0; i < n; ++i) pap += pdir[i] * ap[i];
            double a = rs / pap;
            for (std::size_t i = 0; i < n; ++i) {
                gvec[i] += a * pdir[i];
                res[i] -= a * ap[i];
            }
            double rs_new = 0;
            for (double v : res) rs_new += v * v;
            if (std::sqrt(rs_new) <= tol) break;
            for (std::size_t i = 0; i < n; ++i) pdir[i] = res[i] + (rs_new / rs) * pdir[i];
            rs = rs_new;
        }
        return gvec;
    };

    // window-too-small diagnostic: probability of reaching outside the window
    // before absorption by an obstacle
    std::vector<double> r_exit(n, 0.0);
    bool any_exit = false;
    for (std::size_t i = 0; i < n; ++i) {
        int outside = 0;
        for (int m = 0; m < 2 * d; ++m) {
            Point q = g.sites[i].shifted(m / 2, m % 2 == 0 ? 1 : -1);
            if (!env.window.contains(q)) ++outside;
        }
        if (outside) {
            r_exit[i] = inv * outside;
            any_exit = true;
        }
    }
    std::size_t u_idx = g.index.at(u);
    if (any_exit) {
        std::vector<double> h = solve(r_exit, 1e-12);
        if (h[u_idx] > 1e-9)
            throw std::runtime_error("green_visits: window boundary reachable with mass > 1e-9");
    }

    std::vector<double> b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (in_ball(g.sites[i])) b[i] += 1.0;
        for (int m = 0; m < 2 * d; ++m) {
            Point q = g.sites[i].shifted(m / 2, m % 2 == 0 ? 1 : -1);
            if (env.obstacles.contains(q) && in_ball(q)) b[i] += inv;
        }
    }
    std::vector<double> gsol = solve(b, 1e-11);
    GreenResult out;
    out.value = gsol[u_idx];
    std::vector<double> qg(n);
    g.apply_q(gsol, qg);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double rr = gsol[i] - qg[i] - b[i];
        res += rr * rr;
    }
    out.residual = std::sqrt(res);
    return out;
}

SurvivalBound survival_lower_bound(int d, double p, long long N, double c) {
    if (N < 1) throw std::invalid_argument("survival_lower_bound: N >= 1");
    ScalingConstants sc = scaling_constants(d, p);
    double rho = sc.rho_N(N);
    // rho_N is defined as the optimizer of the volume variable in
    // r -> r log p - N lambda_1 r^{-2/d}, so the confinement ball has volume
    // rho_N^d and eigenvalue lambda_1 rho_N^{-2}; this normalization makes the
    // leading exponent match the Donsker-Varadhan constant exactly.
    double vol = std::pow(rho, d);
    double lambda = sc.lambda1_continuum / (rho * rho);
    SurvivalBound out;
    out.log_value = vol * std::log(p) - static_cast<double>(N) * lambda -
                    c * std::pow(rho, d - 1.0);
    out.value = std::exp(out.log_value);
    return out;
}

ParityCheckReport parity_spectrum_check(const LatticeSet& domain) {
    ParityCheckReport rep;
    std::vector<double> q = full_q_spectrum(domain);
    const std::size_t n = q.size();
    for (std::size_t i = 0; i < n; ++i)
        rep.max_asymmetry = std::max(rep.max_asymmetry, std::abs(q[i] + q[n - 1 - i]));

    SpectrumResult sp = dirichlet_spectrum(domain, 1);
    SiteGraph g(domain);
    double theta = 1.0 - sp.eigenvalues[0];
    for (int parity = 0; parity < 2; ++parity) {
        std::vector<double> v(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            if (g.sites[i].is_even() == (parity == 0)) v[i] = sp.eigenvectors[0][i];
        double norm = 0;
        for (double x : v) norm += x * x;
        if (norm == 0) continue;
        std::vector<double> qv(n), q2v(n);
        g.apply_q(v, qv);
        g.apply_q(qv, q2v);
        double res = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double rr = q2v[i] - theta * theta * v[i];
            res += rr * rr;
        }
        rep.projection_residual =
            std::max(rep.projection_residual, std::sqrt(res / norm));
    }
    return rep;
}

EigenBoundsMeasurement eigen_bounds_measurement(const LatticeSet& domain) {
    EigenBoundsMeasurement out;
    CenterResult c = empirical_center(domain);
    long long rin = inscribed_radius(domain, c.center);
    if (rin < 10)
        throw std::invalid_argument("eigen_bounds_measurement: inscribed ball radius < 10");
    if (c.radius > 3.0 * static_cast<double>(rin))
        throw std::invalid_argument("eigen_bounds_measurement: domain not ball-comparable");
    out.inradius = static_cast<double>(rin);
    SpectrumResult sp = dirichlet_spectrum(domain, 2);
    double sup = 0.0;
    for (double v : sp.eigenvectors[0]) sup = std::max(sup, std::abs(v));
    out.gap_times_r2 = (sp.eigenvalues[1] - sp.eigenvalues[0]) * out.inradius * out.inradius;
    out.sup_times_rd2 = sup * std::pow(out.inradius, domain.dim() / 2.0);
    return out;
}

}  // namespace owalk
