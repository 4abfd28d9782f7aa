#ifndef OWALK_BESSEL_HPP
#define OWALK_BESSEL_HPP

namespace owalk {

// Bessel function of the first kind, ascending series; adequate for the
// argument range needed to bracket the first zero.
double bessel_j(double nu, double x);

// First positive zero j_{nu,1}, bisection inside (nu+1, nu+4), relative
// accuracy 1e-12.
double bessel_first_zero(double nu);

}  // namespace owalk

#endif
