#pragma once

#include <string>
#include <vector>

#include "hil/lfunc.hpp"

namespace hil {

struct CheckSample {
    double param = 0.0;   // u, t, Re s, T, ... depending on the check
    cplx lhs, rhs;
    double residual = 0.0;
};

struct CheckResult {
    std::string name;
    double residual_or_sup = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::vector<CheckSample> detail;
    double fitted_constant = 0.0;  // K_1, sup, ... where meaningful
};

// Lemma 3.1: int_0^inf R_f(t) cosh((pi/2-u)t) dt and the sinh/I_f pair
// against the boundary values of f on |z| = 1.
CheckResult check_cosh_sinh_identities(const HalfIntegralForm& f,
                                       const std::vector<double>& u_grid,
                                       double tol = 1e-6);

// Eq. (3.11): int_R R_f(t) (-iz)^{-it} dt = pi i^{-k/2-1/4} z^{k/2+1/4}
// { f(z/sqrt(4N)) + (f|W)(z/sqrt(4N)) }.
CheckResult check_fourier_representation(const HalfIntegralForm& f,
                                         const std::vector<cplx>& z_grid,
                                         double tol = 1e-6);

// Lemma 3.2 at p = 0: sup over the grid of |f(-e^{-iu}/sqrt(4N))| u^{k+1/2}
// e^{A/u}; passes when stable (< 5%) under halving the grid spacing.
CheckResult check_derivative_bound_p0(const HalfIntegralForm& f,
                                      const std::vector<double>& u_grid,
                                      double A_candidate);

// A of Eq. (3.19): 2 c e^{-pi^2/96} / (9 r sqrt(N)).
double lemma32_A(long c, long r, long N);

struct SinhSinCoeff {
    double closed_form = 0.0;  // 2^{2j+1} pi^{4j} / (4j+2)!
    double nested_sum = 0.0;   // sum_{r_1<...<r_j<=R} prod r_i^{-4}
};
SinhSinCoeff sinh_sin_coeff(int j, long R);

enum class Kernel { CoshR, TSinhI };

// int_0^inf X(t) phi_J(t) cosh((pi/2-u)t) dt with phi_J the partial product
// over the supplied zero ordinates; X = R_f or t I_f.
double partial_product_functional(const HalfIntegralForm& f, double u,
                                  const std::vector<double>& zeros,
                                  Kernel kernel);

// Eq. (4.26): e^{-pi^2/192} / (6 pi) * sqrt(2c / (r sqrt(N))).
double dlvp_constant(long c, long r, long N);

// Lemma 5.2: ray-integral route against direct summation (absolute
// convergence region) or against a refined quadrature (elsewhere).
CheckResult check_l_f1_integral(const HalfIntegralForm& f,
                                const std::vector<cplx>& s_grid, long c = 1,
                                double tol = 1e-6);

// Eq. (6.4): Parseval for I(t) = int_t^{t+H} R_f(u) e^{(pi/2-eps)u} du.
// T_support <= 0 selects the envelope-driven default.
CheckResult check_parseval_I(const HalfIntegralForm& f, double H, double eps,
                             double T_support = 0.0, double tol = 1e-4);

// Claim 6.1: T -> int_T^{2T} |Psi|^2 / T bounded across the grid.
CheckResult check_mean_square_psi(const HalfIntegralForm& f,
                                  const std::vector<double>& T_grid, double H,
                                  long r = 1, double ratio_tol = 10.0);

}  // namespace hil
