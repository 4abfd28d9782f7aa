#ifndef OWALK_POINT_HPP
#define OWALK_POINT_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace owalk {

// Lattice site in Z^d. Dimension is carried per point; all points in one
// computation must agree (checked where it matters).
class Point {
public:
    static constexpr int kMaxDim = 4;

    Point() : dim_(0), c_{} {}

    explicit Point(int dim) : dim_(dim), c_{} {
        if (dim < 2 || dim > kMaxDim)
            throw std::invalid_argument("Point: dimension must be in [2," +
                                        std::to_string(kMaxDim) + "]");
    }

    Point(std::initializer_list<int> coords) : dim_(static_cast<int>(coords.size())), c_{} {
        if (dim_ < 2 || dim_ > kMaxDim)
            throw std::invalid_argument("Point: dimension must be in [2,4]");
        int i = 0;
        for (int v : coords) c_[i++] = v;
    }

    int dim() const { return dim_; }
    int operator[](int i) const { return c_[i]; }
    int& operator[](int i) { return c_[i]; }

    Point shifted(int axis, int delta) const {
        Point q = *this;
        q.c_[axis] += delta;
        return q;
    }

    Point operator+(const Point& o) const {
        Point q = *this;
        for (int i = 0; i < dim_; ++i) q.c_[i] += o.c_[i];
        return q;
    }
    Point operator-(const Point& o) const {
        Point q = *this;
        for (int i = 0; i < dim_; ++i) q.c_[i] -= o.c_[i];
        return q;
    }

    bool operator==(const Point& o) const {
        if (dim_ != o.dim_) return false;
        for (int i = 0; i < dim_; ++i)
            if (c_[i] != o.c_[i]) return false;
        return true;
    }
    bool operator!=(const Point& o) const { return !(*this == o); }

    // Lexicographic; used for deterministic iteration orders and tie-breaking.
    bool operator<(const Point& o) const {
        for (int i = 0; i < dim_; ++i) {
            if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
        }
        return false;
    }

    long long norm2_sq(const Point& o) const {
        long long s = 0;
        for (int i = 0; i < dim_; ++i) {
            long long d = static_cast<long long>(c_[i]) - o.c_[i];
            s += d * d;
        }
        return s;
    }
    double norm2(const Point& o) const { return std::sqrt(static_cast<double>(norm2_sq(o))); }

    long long norm1(const Point& o) const {
        long long s = 0;
        for (int i = 0; i < dim_; ++i)
            s += std::llabs(static_cast<long long>(c_[i]) - o.c_[i]);
        return s;
    }

    long long norm_inf(const Point& o) const {
        long long s = 0;
        for (int i = 0; i < dim_; ++i)
            s = std::max(s, std::llabs(static_cast<long long>(c_[i]) - o.c_[i]));
        return s;
    }

    bool is_even() const {
        long long s = 0;
        for (int i = 0; i < dim_; ++i) s += c_[i];
        return (s % 2 + 2) % 2 == 0;
    }

    std::string to_string() const {
        std::string s;
        for (int i = 0; i < dim_; ++i) {
            if (i) s += ' ';
            s += std::to_string(c_[i]);
        }
        return s;
    }

    std::uint64_t hash() const {
        // splitmix64 over the packed coordinates
        std::uint64_t h = 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(dim_);
        for (int i = 0; i < dim_; ++i) {
            std::uint64_t z = h + 0x9e3779b97f4a7c15ull +
                              static_cast<std::uint64_t>(static_cast<std::uint32_t>(c_[i]));
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            h = z ^ (z >> 31);
        }
        return h;
    }

private:
    int dim_;
    std::array<int, kMaxDim> c_;
};

struct PointHash {
    std::size_t operator()(const Point& p) const { return static_cast<std::size_t>(p.hash()); }
};

inline Point origin(int dim) { return Point(dim); }

inline Point unit_step(int dim, int move_index) {
    // moves are indexed 0..2d-1: +e_1, -e_1, +e_2, -e_2, ...
    Point p(dim);
    p[move_index / 2] = (move_index % 2 == 0) ? 1 : -1;
    return p;
}

}  // namespace owalk

#endif
