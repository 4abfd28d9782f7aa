#ifndef OWALK_LATTICE_SET_HPP
#define OWALK_LATTICE_SET_HPP

#include <iosfwd>
#include <unordered_set>
#include <vector>

#include "owalk/point.hpp"

namespace owalk {

struct BallSpec {
    Point center;
    double radius = 0.0;  // Euclidean, non-strict inequality
};

// Finite subset of Z^d with O(1) membership. Immutable once built in normal
// use; mutation is confined to construction helpers.
class LatticeSet {
public:
    LatticeSet() : dim_(0) {}
    explicit LatticeSet(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    bool contains(const Point& p) const { return members_.count(p) > 0; }

    void insert(const Point& p) {
        if (dim_ == 0) dim_ = p.dim();
        if (p.dim() != dim_)
            throw std::invalid_argument("LatticeSet: dimension mismatch on insert");
        members_.insert(p);
    }

    void erase(const Point& p) { members_.erase(p); }

    const std::unordered_set<Point, PointHash>& members() const { return members_; }

    // Lexicographically sorted copy; the canonical iteration order for
    // serialization and seeded sampling.
    std::vector<Point> sorted_points() const;

    // Min/max corner of the bounding box.
    std::pair<Point, Point> bounding_box() const;

    bool operator==(const LatticeSet& o) const {
        return dim_ == o.dim_ && members_ == o.members_;
    }

    // Line-oriented text format: "d=<dim> n=<count>" then one point per line,
    // lexicographic order. Bit-exact round trip.
    void write(std::ostream& os) const;
    static LatticeSet read(std::istream& is);

private:
    int dim_;
    std::unordered_set<Point, PointHash> members_;
};

// {y : ||y - center|| <= radius}
LatticeSet ball_points(const BallSpec& spec);

// B(x,r) together with its external boundary (the closure used in crossing
// decompositions).
LatticeSet closed_ball_points(const BallSpec& spec);

// {y not in A : ||y - x|| = 1 for some x in A}
LatticeSet external_boundary(const LatticeSet& A);

// Nearest-neighbor component of A containing seed; empty if seed not in A.
LatticeSet connected_component(const LatticeSet& A, const Point& seed);

bool is_connected(const LatticeSet& A);

struct CenterResult {
    Point center;
    double radius = 0.0;
};

// 1-center over lattice candidates: minimizes the max Euclidean distance to A,
// ties broken lexicographically. Exhaustive over the bounding box for small
// sets, coordinate descent from the centroid for large ones.
CenterResult empirical_center(const LatticeSet& A);

// Largest integer r with ball_points(center, r) contained in A.
long long inscribed_radius(const LatticeSet& A, const Point& center);

}  // namespace owalk

#endif
