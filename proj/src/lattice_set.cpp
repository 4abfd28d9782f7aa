#include "owalk/lattice_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace owalk {

std::vector<Point> LatticeSet::sorted_points() const {
    std::vector<Point> v(members_.begin(), members_.end());
    std::sort(v.begin(), v.end());
    return v;
}

std::pair<Point, Point> LatticeSet::bounding_box() const {
    if (members_.empty()) throw std::invalid_argument("bounding_box: empty set");
    Point lo(dim_), hi(dim_);
    bool first = true;
    for (const Point& p : members_) {
        for (int i = 0; i < dim_; ++i) {
            if (first || p[i] < lo[i]) lo[i] = p[i];
            if (first || p[i] > hi[i]) hi[i] = p[i];
        }
        first = false;
    }
    return {lo, hi};
}

void LatticeSet::write(std::ostream& os) const {
    os << "d=" << dim_ << " n=" << members_.size() << "\n";
    for (const Point& p : sorted_points()) os << p.to_string() << "\n";
}

LatticeSet LatticeSet::read(std::istream& is) {
    std::string header;
    while (std::getline(is, header)) {
        if (!header.empty() && header[0] != '#') break;
    }
    int dim = 0;
    std::size_t n = 0;
    if (std::sscanf(header.c_str(), "d=%d n=%zu", &dim, &n) != 2)
        throw std::runtime_error("LatticeSet::read: bad header '" + header + "'");
    LatticeSet s(dim);
    std::string line;
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::getline(is, line))
            throw std::runtime_error("LatticeSet::read: truncated input");
        std::istringstream ls(line);
        Point p(dim);
        for (int i = 0; i < dim; ++i)
            if (!(ls >> p[i])) throw std::runtime_error("LatticeSet::read: bad point line");
        s.insert(p);
    }
    if (s.size() != n) throw std::runtime_error("LatticeSet::read: duplicate points");
    return s;
}

namespace {

// Iterate the integer box [lo,hi] in lexicographic order.
template <class F>
void for_each_in_box(const Point& lo, const Point& hi, F&& f) {
    const int d = lo.dim();
    Point p = lo;
    while (true) {
        f(p);
        int i = d - 1;
        while (i >= 0) {
            if (p[i] < hi[i]) {
                ++p[i];
                break;
            }
            p[i] = lo[i];
            --i;
        }
        if (i < 0) break;
    }
}

}  // namespace

LatticeSet ball_points(const BallSpec& spec) {
    if (spec.radius < 0) throw std::invalid_argument("ball_points: negative radius");
    const int d = spec.center.dim();
    const long long r = static_cast<long long>(std::floor(spec.radius));
    const double r2 = spec.radius * spec.radius;
    LatticeSet out(d);
    Point lo = spec.center, hi = spec.center;
    for (int i = 0; i < d; ++i) {
        lo[i] -= static_cast<int>(r);
        hi[i] += static_cast<int>(r);
    }
    for_each_in_box(lo, hi, [&](const Point& p) {
        if (static_cast<double>(p.norm2_sq(spec.center)) <= r2) out.insert(p);
    });
    return out;
}

LatticeSet closed_ball_points(const BallSpec& spec) {
    LatticeSet b = ball_points(spec);
    LatticeSet bd = external_boundary(b);
    for (const Point& p : bd.members()) b.insert(p);
    return b;
}

LatticeSet external_boundary(const LatticeSet& A) {
    LatticeSet out(A.dim() ? A.dim() : 2);
    for (const Point& p : A.members()) {
        for (int m = 0; m < 2 * A.dim(); ++m) {
            Point q = p.shifted(m / 2, m % 2 == 0 ? 1 : -1);
            if (!A.contains(q)) out.insert(q);
        }
    }
    return out;
}

LatticeSet connected_component(const LatticeSet& A, const Point& seed) {
    LatticeSet out(A.dim() ? A.dim() : seed.dim());
    if (!A.contains(seed)) return out;
    std::deque<Point> queue{seed};
    out.insert(seed);
    while (!queue.empty()) {
        Point p = queue.front();
        queue.pop_front();
        for (int m = 0; m < 2 * A.dim(); ++m) {
            Point q = p.shifted(m / 2, m % 2 == 0 ? 1 : -1);
            if (A.contains(q) && !out.contains(q)) {
                out.insert(q);
                queue.push_back(q);
            }
        }
    }
    return out;
}

bool is_connected(const LatticeSet& A) {
    if (A.empty()) return true;
    return connected_component(A, *A.members().begin()).size() == A.size();
}

namespace {

long long max_sq_dist(const Point& c, const std::vector<Point>& pts) {
    long long m = 0;
    for (const Point& p : pts) m = std::max(m, c.norm2_sq(p));
    return m;
}

}  // namespace

CenterResult empirical_center(const LatticeSet& A) {
    if (A.empty()) throw std::invalid_argument("empirical_center: empty set");
    const int d = A.dim();
    const std::vector<Point> pts = A.sorted_points();
    auto [lo, hi] = A.bounding_box();

    long long box_vol = 1;
    for (int i = 0; i < d; ++i) box_vol *= (hi[i] - lo[i] + 1);

    Point best(d);
    long long best_sq = std::numeric_limits<long long>::max();

    if (A.size() <= 200 && box_vol <= 200000) {
        for_each_in_box(lo, hi, [&](const Point& c) {
            long long m = max_sq_dist(c, pts);
            if (m < best_sq) {  // lex order of the scan breaks ties
                best_sq = m;
                best = c;
            }
        });
    } else {
        // coordinate descent from the rounded centroid
        std::array<double, Point::kMaxDim> cen{};
        for (const Point& p : pts)
            for (int i = 0; i < d; ++i) cen[i] += p[i];
        Point c(d);
        for (int i = 0; i < d; ++i)
            c[i] = static_cast<int>(std::llround(cen[i] / static_cast<double>(pts.size())));
        long long cur = max_sq_dist(c, pts);
        bool improved = true;
        while (improved) {
            improved = false;
            for (int m = 0; m < 2 * d; ++m) {
                Point q = c.shifted(m / 2, m % 2 == 0 ? 1 : -1);
                long long v = max_sq_dist(q, pts);
                if (v < cur || (v == cur && q < c)) {
                    cur = v;
                    c = q;
                    improved = true;
                }
            }
        }
        best = c;
        best_sq = cur;
    }
    return {best, std::sqrt(static_cast<double>(best_sq))};
}

long long inscribed_radius(const LatticeSet& A, const Point& center) {
    if (!A.contains(center)) return -1;
    long long r = 0;
    while (true) {
        LatticeSet b = ball_points({center, static_cast<double>(r + 1)});
        bool inside = true;
        for (const Point& p : b.members())
            if (!A.contains(p)) {
                inside = false;
                break;
            }
        if (!inside) return r;
        ++r;
    }
}

}  // namespace owalk
