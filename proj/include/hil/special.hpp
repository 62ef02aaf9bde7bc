#pragma once

#include <complex>

#include "hil/errors.hpp"

namespace hil {

using cplx = std::complex<double>;

struct GammaValue {
    cplx value;
    double abs_err = 0.0;
    bool loss_of_precision = false;
};

// log Gamma(s), principal determination from the recurrence/Stirling route.
// Throws PoleAtNonPositiveInteger at s = 0, -1, -2, ...
cplx log_gamma(cplx s);

// Gamma(s) = exp(log_gamma(s)).
GammaValue gamma_fn(cplx s);

// Upper incomplete gamma Gamma(s, x), x > 0 real, s complex.  Continued
// fraction for x >= |s| + 2, series for gamma(s,x) otherwise; near
// non-positive integer s the series route goes through a downward recurrence
// seeded at E_1(x).
GammaValue upper_incomplete_gamma(cplx s, double x);

// G(w, x) = x^{-w} Gamma(w, x): the building block of the approximate
// functional equation sums.
GammaValue g_factor(cplx w, double x);

// (2 pi)^{1/2} |t|^{sigma - 1/2} e^{-pi |t| / 2}: Stirling modulus of
// Gamma(sigma + it) for |t| -> infinity.
double stirling_modulus(double sigma, double t);

// epsilon_d = 1 for d = 1 (mod 4), i for d = 3 (mod 4); d must be odd.
cplx epsilon_d(long d);

// Shimura's extension of the Jacobi symbol (c/d), d odd (possibly negative).
// Returns -1, 0, or 1; 0 iff gcd(c,d) > 1.
int shimura_jacobi(long c, long d);

}  // namespace hil
