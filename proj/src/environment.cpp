#include "owalk/environment.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <vector>

namespace owalk {

void Environment::write(std::ostream& os) const {
    std::uint64_t h = 0;
    for (const Point& p : window.sorted_points()) h = h * 1000003ull + p.hash();
    os << "# obstacles of window " << h << "\n";
    obstacles.write(os);
}

Environment Environment::read(std::istream& is) {
    Environment env;
    env.obstacles = LatticeSet::read(is);  // header comment skipped by the reader
    env.window = env.obstacles;
    return env;
}

bool site_is_obstacle(std::uint64_t seed, double p, const Point& x) {
    std::uint64_t z = seed ^ x.hash();
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    double u = static_cast<double>(z >> 11) * 0x1.0p-53;
    return u < 1.0 - p;
}

Environment sample_environment(const ModelParams& params, const LatticeSet& window) {
    params.validate();
    Environment env;
    env.window = window;
    env.obstacles = LatticeSet(window.dim() ? window.dim() : params.d);
    for (const Point& x : window.sorted_points())
        if (site_is_obstacle(params.seed, params.p, x)) env.obstacles.insert(x);
    return env;
}

KillResult killing_time(const WalkPath& path, const Environment& env) {
    long long n = 0;
    for (const Point& pos : path.positions()) {
        if (!env.window.contains(pos))
            throw std::runtime_error("killing_time: path leaves the window; enlarge it");
        if (env.obstacles.contains(pos)) return {false, n};
        ++n;
    }
    return {true, -1};
}

namespace {

// Flat indexer over the box [x-n, x+n]^d.
struct Box {
    Point lo;
    int d;
    long long side;
    std::vector<long long> stride;

    Box(const Point& x, long long n) : lo(x.dim()), d(x.dim()), side(2 * n + 1) {
        for (int i = 0; i < d; ++i) lo[i] = x[i] - static_cast<int>(n);
        stride.assign(d, 1);
        for (int i = d - 2; i >= 0; --i) stride[i] = stride[i + 1] * side;
    }
    long long volume() const { return stride[0] * side; }
    long long index(const Point& p) const {
        long long idx = 0;
        for (int i = 0; i < d; ++i) {
            long long c = p[i] - lo[i];
            if (c < 0 || c >= side) return -1;
            idx += c * stride[i];
        }
        return idx;
    }
    Point point(long long idx) const {
        Point p(d);
        for (int i = 0; i < d; ++i) {
            p[i] = lo[i] + static_cast<int>(idx / stride[i]);
            idx %= stride[i];
        }
        return p;
    }
};

}  // namespace

double survival_dp(const Environment& env, const Point& x, long long n) {
    const int d = x.dim();
    if (env.obstacles.contains(x)) return 0.0;
    if (n == 0) return 1.0;

    Box box(x, n);
    const long long vol = box.volume();
    std::vector<std::uint8_t> open(vol, 0), in_ball(vol, 0);
    for (long long idx = 0; idx < vol; ++idx) {
        Point p = box.point(idx);
        if (p.norm1(x) > n) continue;
        in_ball[idx] = 1;
        if (!env.window.contains(p))
            throw std::runtime_error("survival_dp: l1-ball not contained in window");
        open[idx] = env.obstacles.contains(p) ? 0 : 1;
    }

    std::vector<double> v(vol, 0.0), next(vol, 0.0);
    for (long long idx = 0; idx < vol; ++idx) v[idx] = open[idx] ? 1.0 : 0.0;

    const double inv = 1.0 / (2.0 * d);
    for (long long step = 0; step < n; ++step) {
        for (long long idx = 0; idx < vol; ++idx) {
            if (!in_ball[idx] || !open[idx]) {
                next[idx] = 0.0;
                continue;
            }
            Point p = box.point(idx);
            double s = 0.0;
            for (int m = 0; m < 2 * d; ++m) {
                long long j = box.index(p.shifted(m / 2, m % 2 == 0 ? 1 : -1));
                if (j >= 0) s += v[j];
            }
            next[idx] = inv * s;
        }
        v.swap(next);
    }
    return v[box.index(x)];
}

}  // namespace owalk
