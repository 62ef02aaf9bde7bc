#pragma once

#include <utility>
#include <vector>

#include "hil/forms.hpp"

namespace hil {

struct MpEval {
    cplx value;
    double abs_err = 0.0;   // cancellation floor of the working precision
    long nodes = 0;
};

// Lambda(s, f) and Lambda(s, f|W) by high-precision Gauss-Legendre quadrature
// of the Hecke integral
//   Lambda(s) = int_1^inf [ F(iy) y^{s-1} + (F|W)(iy) y^{kappa-s-1} ] dy,
//   F(iy) = sum_n a_f(n) e^{-2 pi n y / sqrt(4N)},
// which is the incomplete-gamma representation with the Gamma(s, x_n) left as
// integrals.  The y^{it} oscillation costs ~ e^{pi |t| / 2} of cancellation,
// absorbed by tiered working precision (60 / 90 / 130 digits), so values stay
// accurate relative to the Stirling envelope out to |Im s| ~ 150 where the
// double-precision truncated sums are pure noise beyond |Im s| ~ 19.
bool mp_lambda_supported(double im_s);

std::pair<MpEval, MpEval> mp_lambda_pair(const HalfIntegralForm& f, cplx s);

// r_f and i_f on the uniform grid t0 + j h, j < count, in one pass; per-node
// rotation recurrences make this far cheaper than pointwise evaluation at
// heights that need the quadrature route.
void critical_sweep(const HalfIntegralForm& f, double t0, double h, long count,
                    std::vector<double>& r_out, std::vector<double>& i_out);

// Envelope |(2 pi / sqrt(4N))^{-s} Gamma(s)| on the critical line; the natural
// scale of Lambda(sigma0 + it) used to normalize signature scans.
double critical_envelope(const HalfIntegralForm& f, double t);

}  // namespace hil
