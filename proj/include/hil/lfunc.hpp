#pragma once

#include <complex>
#include <utility>

#include "hil/forms.hpp"

namespace hil {

struct LValue {
    cplx value;
    double abs_err = 0.0;
    long terms_used = 0;
    bool exact_zero = false;         // Gamma-pole trivial zero of L(s, f)
    bool loss_of_precision = false;
};

// Completed L-function Lambda(s, f) = (2 pi / sqrt(4N))^{-s} Gamma(s) L(s, f)
// by the incomplete-gamma (approximate functional equation) representation;
// entire in s, satisfies Lambda(s, f) = Lambda(k + 1/2 - s, f|W) exactly by
// construction.
LValue lambda_completed(const HalfIntegralForm& f, cplx s,
                        double eps_abs = 1e-10);

// {Lambda(s, f), Lambda(s, f|W)} sharing the incomplete-gamma evaluations.
std::pair<LValue, LValue> lambda_pair(const HalfIntegralForm& f, cplx s,
                                      double eps_abs = 1e-10);

// L(s, f) = Lambda(s,f) (2 pi/sqrt(4N))^s / Gamma(s); at non-positive integer
// s the Gamma pole forces L = 0, reported with exact_zero set.
LValue l_value(const HalfIntegralForm& f, cplx s, double eps_abs = 1e-10);

// Plain truncated Dirichlet sum (oracle route; needs Re s large).
LValue l_value_direct(const HalfIntegralForm& f, cplx s, long M,
                      bool partner = false);

// Signature functions on the critical line:
//   r_f(t) = Re (Lambda(s,f)+Lambda(s,f|W))/2,
//   i_f(t) = Im (Lambda(s,f)-Lambda(s,f|W))/2,   s = k/2 + 1/4 + it.
// Real-valued for real (resp. purely imaginary) coefficient class; r_f is
// even and i_f odd in t.
double r_f(const HalfIntegralForm& f, double t, double eps_abs = 1e-10);
double i_f(const HalfIntegralForm& f, double t, double eps_abs = 1e-10);

// p/q Gamma_0(4N)-equivalent to the cusp at infinity.
bool cusp_equivalent_to_infinity(long p, long q, long level);

struct TwistSpec {
    long p = 0, q = 1;
    long p_bar = 0;          // p * p_bar = 1 (mod q)
    bool involutive = false; // p^2 = 1 (mod q)
    bool cusp_ok = false;    // p/q ~ infinity under Gamma_0(4N)
    bool trivial = false;    // q = 1: untwisted up to normalization
    cplx omega;              // root number of Eq. (1.11)
};

// Validates p, q against the level; OddityViolation for even p (q > 1),
// InvalidCusp for gcd(p, q) > 1 or q < 1.
TwistSpec make_twist(long p, long q, const HalfIntegralForm& f);

// eta_{p/q}(s, f) = (2 pi / q)^{-s} Gamma(s) L_{p/q}(s, f), continued via the
// incomplete-gamma sums; requires cusp_ok (or a trivial twist).
LValue twisted_lambda(const HalfIntegralForm& f, const TwistSpec& tw, cplx s,
                      double eps_abs = 1e-10);

// Direct twisted Dirichlet sum times gamma factor (oracle; Re s large).
LValue twisted_l_direct(const HalfIntegralForm& f, const TwistSpec& tw, cplx s,
                        long M);

struct ZValue {
    double value = 0.0;
    double imag_residual = 0.0;  // |Im| of the allegedly real quantity
    double abs_err = 0.0;
};

// Z_{f,p/q}(t): real (involutive twists, real coefficients) normalization of
// eta_{p/q} on the critical line.  NonInvolutiveTwist otherwise.
ZValue z_twisted(const HalfIntegralForm& f, const TwistSpec& tw, double t,
                 double eps_abs = 1e-10);

// L*(s, f) = c^s L(s, f) - a_f(c).
LValue l_star(const HalfIntegralForm& f, long c, cplx s,
              double eps_abs = 1e-10);

// L(s, f_1) = c^{-s} int_s^infty L*(z, f) dz (horizontal ray).
LValue l_f1(const HalfIntegralForm& f, long c, cplx s, double eps_abs = 1e-9);

// Direct route sum_{n>c} a(n) / (log(n/c) n^s); requires Re s > growth_exp+1.
LValue l_f1_direct(const HalfIntegralForm& f, long c, cplx s, long M);

// phi_f(s) = (L(s,f) + L(s,f|W))/2 and its smoothed partner psi_f, built on
// the averaged coefficients alpha_f(n); same ray-integral construction.
LValue phi_f(const HalfIntegralForm& f, cplx s, double eps_abs = 1e-10);
LValue psi_f(const HalfIntegralForm& f, long r, cplx s, double eps_abs = 1e-9);

// Psi(t) = -i r^{k/2+1/4} / alpha_f(r) * { r^{it} psi_f(s0 + it)
//          - r^{i(t+H)} psi_f(s0 + i(t+H)) };  DegenerateAveragedForm if
// alpha_f(r) = 0.
cplx big_psi(const HalfIntegralForm& f, long r, double t, double H,
             double eps_abs = 1e-8);

}  // namespace hil
