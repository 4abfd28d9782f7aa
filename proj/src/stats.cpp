#include "owalk/stats.hpp"

#include <algorithm>
#include <stdexcept>

namespace owalk {

MeanErr mean_stderr(const std::vector<double>& xs) {
    MeanErr r;
    r.n = xs.size();
    if (xs.empty()) return r;
    double s = 0.0;
    for (double x : xs) s += x;
    r.mean = s / static_cast<double>(xs.size());
    if (xs.size() < 2) return r;
    double v = 0.0;
    for (double x : xs) v += (x - r.mean) * (x - r.mean);
    v /= static_cast<double>(xs.size() - 1);
    r.err = std::sqrt(v / static_cast<double>(xs.size()));
    return r;
}

AutocorrResult integrated_autocorr_time(const std::vector<double>& xs) {
    AutocorrResult r;
    const std::size_t n = xs.size();
    if (n < 4) {
        r.reliable = false;
        return r;
    }
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(n);
    double c0 = 0.0;
    for (double x : xs) c0 += (x - mean) * (x - mean);
    c0 /= static_cast<double>(n);
    if (c0 <= 0.0) {
        r.tau = 1.0;
        return r;
    }
    double tau = 1.0;
    std::size_t w = 1;
    for (; w < n / 2; ++w) {
        double c = 0.0;
        for (std::size_t i = 0; i + w < n; ++i) c += (xs[i] - mean) * (xs[i + w] - mean);
        c /= static_cast<double>(n - w);
        tau += 2.0 * c / c0;
        if (static_cast<double>(w) >= 5.0 * tau) break;
    }
    r.tau = std::max(tau, 1.0);
    r.window = w;
    r.reliable = r.tau <= static_cast<double>(n) / 50.0;
    return r;
}

double correlated_stderr(const std::vector<double>& xs, double tau) {
    MeanErr m = mean_stderr(xs);
    return m.err * std::sqrt(std::max(tau, 1.0));
}

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y,
                      const std::vector<double>& weights) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("least_squares: need >= 2 matching points");
    std::vector<double> w = weights;
    if (w.empty()) w.assign(x.size(), 1.0);
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        swx += w[i] * x[i];
        swy += w[i] * y[i];
        swxx += w[i] * x[i] * x[i];
        swxy += w[i] * x[i] * y[i];
    }
    double denom = sw * swxx - swx * swx;
    if (denom == 0.0) throw std::invalid_argument("least_squares: degenerate x");
    LineFit f;
    f.slope = (sw * swxy - swx * swy) / denom;
    f.intercept = (swy - f.slope * swx) / sw;
    f.slope_err = std::sqrt(sw / denom);
    return f;
}

}  // namespace owalk
