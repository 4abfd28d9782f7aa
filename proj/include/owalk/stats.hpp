#ifndef OWALK_STATS_HPP
#define OWALK_STATS_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace owalk {

struct MeanErr {
    double mean = 0.0;
    double err = 0.0;  // standard error
    std::size_t n = 0;
};

MeanErr mean_stderr(const std::vector<double>& xs);

// Integrated autocorrelation time by the standard windowing rule: the window
// grows until window >= 5 * tau_hat(window).
struct AutocorrResult {
    double tau = 1.0;
    std::size_t window = 0;
    bool reliable = true;  // false when tau > n / 50
};

AutocorrResult integrated_autocorr_time(const std::vector<double>& xs);

// Standard error of the mean corrected by the autocorrelation time.
double correlated_stderr(const std::vector<double>& xs, double tau);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_err = 0.0;
};

// OLS of y on x, optionally weighted by inverse variance (weights empty -> 1).
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y,
                      const std::vector<double>& weights = {});

}  // namespace owalk

#endif
