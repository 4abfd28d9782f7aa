#ifndef OWALK_WALK_HPP
#define OWALK_WALK_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "owalk/lattice_set.hpp"
#include "owalk/point.hpp"

namespace owalk {

// Open-addressing visit counter keyed by lattice sites: linear probing with
// backward-shift deletion. Entries carry strictly positive counts; this is
// the hot structure of the sampler, so it avoids per-node allocation.
class RangeCounter {
public:
    RangeCounter() : slots_(64) {}

    std::size_t size() const { return size_; }

    int count(const Point& p) const {
        for (std::size_t i = p.hash() & mask();; i = (i + 1) & mask()) {
            const Slot& s = slots_[i];
            if (s.cnt == 0) return 0;
            if (s.key == p) return s.cnt;
        }
    }

    void increment(const Point& p) {
        if ((size_ + 1) * 4 > slots_.size() * 3) grow();
        for (std::size_t i = p.hash() & mask();; i = (i + 1) & mask()) {
            Slot& s = slots_[i];
            if (s.cnt == 0) {
                s.key = p;
                s.cnt = 1;
                ++size_;
                return;
            }
            if (s.key == p) {
                ++s.cnt;
                return;
            }
        }
    }

    void decrement(const Point& p) {
        std::size_t i = p.hash() & mask();
        while (slots_[i].cnt == 0 || !(slots_[i].key == p)) i = (i + 1) & mask();
        if (--slots_[i].cnt > 0) return;
        --size_;
        // backward-shift deletion keeps probe chains contiguous
        std::size_t j = i;
        for (;;) {
            slots_[i].cnt = 0;
            for (;;) {
                j = (j + 1) & mask();
                if (slots_[j].cnt == 0) return;
                std::size_t home = slots_[j].key.hash() & mask();
                if (((j - home) & mask()) >= ((j - i) & mask())) break;
            }
            slots_[i] = slots_[j];
            i = j;
        }
    }

    class const_iterator {
    public:
        const_iterator(const RangeCounter* c, std::size_t i) : c_(c), i_(i) { skip(); }
        std::pair<const Point&, int> operator*() const {
            return {c_->slots_[i_].key, c_->slots_[i_].cnt};
        }
        const_iterator& operator++() {
            ++i_;
            skip();
            return *this;
        }
        bool operator!=(const const_iterator& o) const { return i_ != o.i_; }

    private:
        void skip() {
            while (i_ < c_->slots_.size() && c_->slots_[i_].cnt == 0) ++i_;
        }
        const RangeCounter* c_;
        std::size_t i_;
    };
    const_iterator begin() const { return {this, 0}; }
    const_iterator end() const { return {this, slots_.size()}; }

private:
    struct Slot {
        Point key;
        int cnt = 0;
    };

    std::size_t mask() const { return slots_.size() - 1; }

    void grow() {
        std::vector<Slot> old;
        old.swap(slots_);
        slots_.resize(old.size() * 2);
        for (const Slot& s : old) {
            if (s.cnt == 0) continue;
            std::size_t i = s.key.hash() & mask();
            while (slots_[i].cnt != 0) i = (i + 1) & mask();
            slots_[i] = s;
        }
    }

    std::vector<Slot> slots_;
    std::size_t size_ = 0;
};

// Nearest-neighbor path with an incrementally maintained range multiset.
// Steps are move indices 0..2d-1 (+e1,-e1,+e2,-e2,...).
class WalkPath {
public:
    WalkPath(const Point& start, int dim)
        : dim_(dim), positions_{start} {
        multiset_.increment(start);
    }

    int dim() const { return dim_; }
    std::size_t n_steps() const { return steps_.size(); }
    const std::vector<std::uint8_t>& steps() const { return steps_; }
    const std::vector<Point>& positions() const { return positions_; }
    const Point& start() const { return positions_.front(); }
    const Point& end() const { return positions_.back(); }

    std::size_t range_size() const { return multiset_.size(); }
    const RangeCounter& range_multiset() const { return multiset_; }

    void push_step(std::uint8_t move) {
        Point q = positions_.back().shifted(move / 2, move % 2 == 0 ? 1 : -1);
        steps_.push_back(move);
        positions_.push_back(q);
        multiset_.increment(q);
    }

    void pop_step() {
        multiset_.decrement(positions_.back());
        positions_.pop_back();
        steps_.pop_back();
    }

    // Replace steps [t0, t1) by new_moves (same length not required when
    // t1 == n_steps()). Positions and the range multiset are updated
    // incrementally; steps at and after t1 are kept, so the suffix translates
    // rigidly when the segment displacement changes.
    void rewrite_steps(std::size_t t0, std::size_t t1, const std::vector<std::uint8_t>& new_moves);

    LatticeSet range_set() const {
        LatticeSet s(dim_);
        for (const auto& [p, c] : multiset_) s.insert(p);
        return s;
    }

    // Full recomputation of the range size, for consistency checks.
    std::size_t recount_range() const;

    static WalkPath from_steps(const Point& start, int dim,
                               const std::vector<std::uint8_t>& moves) {
        WalkPath w(start, dim);
        for (auto m : moves) w.push_step(m);
        return w;
    }

private:
    int dim_;
    std::vector<std::uint8_t> steps_;
    std::vector<Point> positions_;
    RangeCounter multiset_;
};

}  // namespace owalk

#endif
