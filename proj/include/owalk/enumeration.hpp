#ifndef OWALK_ENUMERATION_HPP
#define OWALK_ENUMERATION_HPP

#include <functional>

#include "owalk/environment.hpp"
#include "owalk/walk.hpp"

namespace owalk {

inline constexpr unsigned long long kDefaultEnumBudget = 100'000'000ull;

// Depth-first traversal of all (2d)^N step sequences from the origin. The
// callback sees the path with its range multiset maintained incrementally
// (add on entry, decrement on exit). Throws if (2d)^N exceeds the budget.
void enumerate_paths(int d, long long N,
                     const std::function<void(const WalkPath&)>& visit,
                     unsigned long long budget = kDefaultEnumBudget);

// Z_N = E[p^{|S_[0,N]|}], the exact sum over all (2d)^N paths of
// (2d)^{-N} p^{|range|}. Compensated summation throughout.
double exact_partition_function(const ModelParams& params,
                                unsigned long long budget = kDefaultEnumBudget);

// E_{mu_N}[f(S)] = sum_paths (2d)^{-N} p^{|range|} f(path) / Z_N.
double exact_mu_expectation(const ModelParams& params,
                            const std::function<double(const WalkPath&)>& observable,
                            unsigned long long budget = kDefaultEnumBudget);

// Kahan-Neumaier accumulator.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace owalk

#endif
