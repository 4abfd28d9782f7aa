#include "owalk/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace owalk {

double bessel_j(double nu, double x) {
    if (x < 0) throw std::invalid_argument("bessel_j: x >= 0 required");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    // J_nu(x) = sum_m (-1)^m / (m! Gamma(m+nu+1)) (x/2)^{2m+nu}
    const double half = x / 2.0;
    double log_half = std::log(half);
    double sum = 0.0;
    for (int m = 0; m < 200; ++m) {
        double log_term = (2.0 * m + nu) * log_half - std::lgamma(m + 1.0) -
                          std::lgamma(m + nu + 1.0);
        double term = std::exp(log_term);
        sum += (m % 2 == 0) ? term : -term;
        if (term < 1e-18 * (std::abs(sum) + 1e-300) && m > 4) break;
    }
    return sum;
}

double bessel_first_zero(double nu) {
    double lo = nu + 1.0, hi = nu + 4.0;
    double flo = bessel_j(nu, lo);
    double fhi = bessel_j(nu, hi);
    if (!(flo > 0.0 && fhi < 0.0))
        throw std::runtime_error("bessel_first_zero: bracket failed");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = bessel_j(nu, mid);
        if (fm > 0.0)
            lo = mid;
        else
            hi = mid;
        if ((hi - lo) / hi < 1e-13) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace owalk
