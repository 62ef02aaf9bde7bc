#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "hil/errors.hpp"

namespace hil {

struct QuadResult {
    std::complex<double> value;
    double abs_err = 0.0;
    long evals = 0;
};

// Adaptive Gauss(7)-Kronrod(15) on [a, b] for a complex-valued integrand.
// The Gauss/Kronrod difference drives bisection; IntegrationFailure when the
// subdivision budget is exhausted before the tolerance is met.
QuadResult integrate(const std::function<std::complex<double>(double)>& f,
                     double a, double b, double abs_tol, double rel_tol = 1e-12,
                     int max_depth = 40);

}  // namespace hil
