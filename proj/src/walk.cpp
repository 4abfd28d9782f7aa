#include "owalk/walk.hpp"

#include <stdexcept>
#include <unordered_set>

namespace owalk {

void WalkPath::rewrite_steps(std::size_t t0, std::size_t t1,
                             const std::vector<std::uint8_t>& new_moves) {
    const std::size_t n = steps_.size();
    if (t0 > t1 || t1 > n) throw std::invalid_argument("rewrite_steps: bad indices");
    if (t1 < n && new_moves.size() != t1 - t0)
        throw std::invalid_argument("rewrite_steps: interior rewrite must preserve length");

    // fast path: an interior block whose net displacement is unchanged leaves
    // the suffix positions intact, so only the block itself is touched
    if (t1 < n) {
        Point q = positions_[t0];
        for (auto m : new_moves) q = q.shifted(m / 2, m % 2 == 0 ? 1 : -1);
        if (q == positions_[t1]) {
            for (std::size_t i = t0 + 1; i <= t1; ++i) multiset_.decrement(positions_[i]);
            q = positions_[t0];
            for (std::size_t i = 0; i < new_moves.size(); ++i) {
                auto m = new_moves[i];
                q = q.shifted(m / 2, m % 2 == 0 ? 1 : -1);
                steps_[t0 + i] = m;
                positions_[t0 + i + 1] = q;
                multiset_.increment(q);
            }
            return;
        }
    }

    // drop multiset counts for positions t0+1 .. n
    for (std::size_t i = t0 + 1; i <= n; ++i) multiset_.decrement(positions_[i]);

    std::vector<std::uint8_t> tail(steps_.begin() + static_cast<std::ptrdiff_t>(t1),
                                   steps_.end());
    steps_.resize(t0);
    positions_.resize(t0 + 1);
    steps_.reserve(t0 + new_moves.size() + tail.size());

    auto append = [&](std::uint8_t m) {
        Point q = positions_.back().shifted(m / 2, m % 2 == 0 ? 1 : -1);
        steps_.push_back(m);
        positions_.push_back(q);
        multiset_.increment(q);
    };
    for (auto m : new_moves) append(m);
    for (auto m : tail) append(m);
}

std::size_t WalkPath::recount_range() const {
    std::unordered_set<Point, PointHash> s(positions_.begin(), positions_.end());
    return s.size();
}

}  // namespace owalk
