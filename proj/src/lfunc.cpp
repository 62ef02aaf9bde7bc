#include "hil/lfunc.hpp"

#include <cmath>
#include <numeric>

#include "hil/mp_lambda.hpp"
#include "hil/quadrature.hpp"
#include "hil/special.hpp"

namespace hil {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// |G(w, x)| <= e^{-x} / x * (1 + |w| / x) for x > |w| + 1.
double g_factor_bound(double absw, double x) {
    if (x <= absw + 1.0) return 1e300;
    return std::exp(-x) / x * (1.0 + absw / x);
}

bool near_nonpositive_integer(cplx s) {
    if (s.real() > 0.5) return false;
    double r = std::round(s.real());
    return std::abs(s.real() - r) <= 1e-12 && std::abs(s.imag()) <= 1e-12;
}

long modular_inverse(long p, long q) {
    long a = ((p % q) + q) % q, b = q, x0 = 1, x1 = 0;
    while (b != 0) {
        long t = a / b;
        long tmp = a - t * b;
        a = b;
        b = tmp;
        tmp = x0 - t * x1;
        x0 = x1;
        x1 = tmp;
    }
    return ((x0 % q) + q) % q;
}

cplx unit_root(long num, long den) {  // e(num/den)
    double ang = 2.0 * kPi * static_cast<double>(num) / den;
    return cplx(std::cos(ang), std::sin(ang));
}

}  // namespace

std::pair<LValue, LValue> lambda_pair(const HalfIntegralForm& f, cplx s,
                                      double eps_abs) {
    // Beyond |Im s| ~ 19 the incomplete-gamma sums lose everything to
    // cancellation (|Lambda| ~ e^{-pi |t| / 2}); switch to the
    // high-precision Hecke-integral quadrature well before that.
    if (std::abs(s.imag()) > 16.0 && mp_lambda_supported(s.imag())) {
        auto [mf, mw] = mp_lambda_pair(f, s);
        LValue a, b;
        a.value = mf.value;
        b.value = mw.value;
        a.abs_err = mf.abs_err;
        b.abs_err = mw.abs_err;
        a.terms_used = b.terms_used = mf.nodes;
        return {a, b};
    }
    const double kap = f.kappa();
    const double sqL = f.sqrt_level();
    const cplx sd = kap - s;
    const double absw = std::max(std::abs(s), std::abs(sd));
    auto& src = const_cast<CoeffSource&>(*f.coeffs);
    auto& srcW = const_cast<CoeffSource&>(*f.fricke_coeffs);
    cplx s1 = 0.0, s2 = 0.0, s1w = 0.0, s2w = 0.0;
    double err = 0.0;
    bool loss = false;
    long n = 0;
    double tail = 1e300;
    for (;;) {
        ++n;
        if (!src.ensure(n) || !srcW.ensure(n))
            throw InsufficientCoefficients("lambda: coefficient supply");
        double x = 2.0 * kPi * n / sqL;
        GammaValue G1 = g_factor(s, x);
        GammaValue G2 = g_factor(sd, x);
        double a = src.coeff(n), aw = srcW.coeff(n);
        s1 += a * G1.value;
        s2 += aw * G2.value;
        s1w += aw * G1.value;
        s2w += a * G2.value;
        err += (std::abs(a) + std::abs(aw)) * (G1.abs_err + G2.abs_err);
        loss = loss || G1.loss_of_precision || G2.loss_of_precision;
        // Tail: coefficient growth bound times the G-factor envelope; the
        // per-step decay factor e^{-2 pi / sqrt(4N)} controls the geometric
        // remainder once x_n has cleared |w| + 1.
        double xn1 = 2.0 * kPi * (n + 1) / sqL;
        double ratio = std::exp(-2.0 * kPi / sqL) *
                       std::pow((n + 2.0) / (n + 1.0), f.growth_exp);
        double term1 = f.growth_C * std::pow(n + 1.0, f.growth_exp) *
                       (g_factor_bound(absw, xn1) * 2.0);
        if (ratio < 0.9) {
            tail = term1 / (1.0 - ratio);
            if (tail < eps_abs / 2.0 && n >= 4) break;
        }
        if (n > 2000000)
            throw IntegrationFailure("lambda: truncation did not converge");
    }
    LValue a_out, w_out;
    a_out.value = s1 + s2;
    w_out.value = s1w + s2w;
    a_out.abs_err = w_out.abs_err = err + tail;
    a_out.terms_used = w_out.terms_used = n;
    a_out.loss_of_precision = w_out.loss_of_precision = loss;
    return {a_out, w_out};
}

LValue lambda_completed(const HalfIntegralForm& f, cplx s, double eps_abs) {
    return lambda_pair(f, s, eps_abs).first;
}

LValue l_value(const HalfIntegralForm& f, cplx s, double eps_abs) {
    LValue out;
    if (near_nonpositive_integer(s)) {
        // Lambda is entire, Gamma has a pole: trivial zero of L.
        out.exact_zero = true;
        out.value = 0.0;
        out.abs_err = 0.0;
        return out;
    }
    LValue lam = lambda_completed(f, s, eps_abs);
    cplx fac =
        std::exp(s * std::log(2.0 * kPi / f.sqrt_level()) - log_gamma(s));
    out.value = lam.value * fac;
    out.abs_err = lam.abs_err * std::abs(fac) + std::abs(out.value) * 1e-13;
    out.terms_used = lam.terms_used;
    out.loss_of_precision = lam.loss_of_precision;
    return out;
}

LValue l_value_direct(const HalfIntegralForm& f, cplx s, long M,
                      bool partner) {
    const CoeffSource& src = partner ? *f.fricke_coeffs : *f.coeffs;
    const_cast<CoeffSource&>(src).ensure(M);
    M = std::min(M, src.available());
    LValue out;
    cplx sum = 0.0;
    for (long n = 1; n <= M; ++n) {
        double a = src.coeff(n);
        if (a != 0.0) sum += a * std::exp(-s * std::log(static_cast<double>(n)));
    }
    out.value = sum;
    out.terms_used = M;
    double sig = s.real();
    if (sig > f.growth_exp + 1.0)
        out.abs_err = f.growth_C *
                      std::pow(static_cast<double>(M), f.growth_exp + 1.0 - sig) /
                      (sig - f.growth_exp - 1.0);
    else
        out.abs_err = 1e300;  // outside absolute convergence
    return out;
}

double r_f(const HalfIntegralForm& f, double t, double eps_abs) {
    cplx s(f.sigma0(), t);
    auto [lf, lw] = lambda_pair(f, s, eps_abs);
    return 0.5 * (lf.value.real() + lw.value.real());
}

double i_f(const HalfIntegralForm& f, double t, double eps_abs) {
    cplx s(f.sigma0(), t);
    auto [lf, lw] = lambda_pair(f, s, eps_abs);
    return 0.5 * (lf.value.imag() - lw.value.imag());
}

bool cusp_equivalent_to_infinity(long p, long q, long level) {
    if (q < 1) return false;
    if (std::gcd(std::abs(p), q) != 1) return false;
    return q % level == 0;
}

TwistSpec make_twist(long p, long q, const HalfIntegralForm& f) {
    TwistSpec tw;
    tw.p = p;
    tw.q = q;
    if (q < 1) throw InvalidCusp("make_twist: q must be >= 1");
    if (q == 1) {
        tw.p_bar = 0;
        tw.trivial = true;
        tw.involutive = true;
        tw.cusp_ok = false;
        tw.omega = 1.0;
        return tw;
    }
    if (std::gcd(std::abs(p), q) != 1)
        throw InvalidCusp("make_twist: gcd(p, q) must be 1");
    if (p % 2 == 0)
        throw OddityViolation("make_twist: p must be odd (epsilon_p)");
    tw.p_bar = modular_inverse(p, q);
    long pp = ((p % q) + q) % q;
    tw.involutive = (pp * pp) % q == 1 % q;
    tw.cusp_ok = cusp_equivalent_to_infinity(p, q, f.level);
    // omega = i^{k+1/2} (-q/p)^{-2k-1} eps_p^{2k+1}, Eq. (1.11).
    int j = shimura_jacobi(-q, p);
    if (j == 0) throw UndefinedSymbol("make_twist: symbol (-q/p) vanished");
    double kap = f.kappa();
    cplx omega = std::exp(cplx(0.0, kPi * kap / 2.0));
    omega *= static_cast<double>(j);  // j^{-2k-1} = j for j = +-1
    cplx eps = epsilon_d(p);
    if (eps.imag() != 0.0) {  // eps_p = i: i^{2k+1}
        int r4 = static_cast<int>((2 * f.k + 1) % 4);
        const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        omega *= ipow[r4];
    }
    tw.omega = omega;
    return tw;
}

LValue twisted_lambda(const HalfIntegralForm& f, const TwistSpec& tw, cplx s,
                      double eps_abs) {
    if (tw.trivial) {
        LValue lam = lambda_completed(f, s, eps_abs);
        cplx fac = std::exp(-s * std::log(f.sqrt_level()));
        lam.value *= fac;
        lam.abs_err *= std::abs(fac);
        return lam;
    }
    if (!tw.cusp_ok)
        throw InvalidCusp("twisted_lambda: p/q not equivalent to infinity");
    const double kap = f.kappa();
    const cplx sd = kap - s;
    const double absw = std::max(std::abs(s), std::abs(sd));
    auto& src = const_cast<CoeffSource&>(*f.coeffs);
    cplx s1 = 0.0, s2 = 0.0;
    double err = 0.0;
    bool loss = false;
    long n = 0;
    double tail = 1e300;
    for (;;) {
        ++n;
        if (!src.ensure(n))
            throw InsufficientCoefficients("twisted_lambda: coefficients");
        double x = 2.0 * kPi * n / tw.q;
        GammaValue G1 = g_factor(s, x);
        GammaValue G2 = g_factor(sd, x);
        double a = src.coeff(n);
        if (a != 0.0) {
            s1 += a * unit_root(tw.p * n, tw.q) * G1.value;
            s2 += a * unit_root(-tw.p_bar * n, tw.q) * G2.value;
            err += std::abs(a) * (G1.abs_err + G2.abs_err);
        }
        loss = loss || G1.loss_of_precision || G2.loss_of_precision;
        double xn1 = 2.0 * kPi * (n + 1) / tw.q;
        double ratio = std::exp(-2.0 * kPi / tw.q) *
                       std::pow((n + 2.0) / (n + 1.0), f.growth_exp);
        double term1 = f.growth_C * std::pow(n + 1.0, f.growth_exp) *
                       (g_factor_bound(absw, xn1) * 2.0);
        if (ratio < 0.97) {
            tail = term1 / (1.0 - ratio);
            if (tail < eps_abs / 2.0 && n >= 4) break;
        }
        if (n > 4000000)
            throw IntegrationFailure("twisted_lambda: no convergence");
    }
    LValue out;
    out.value = s1 + tw.omega * s2;
    out.abs_err = err + tail;
    out.terms_used = n;
    out.loss_of_precision = loss;
    return out;
}

LValue twisted_l_direct(const HalfIntegralForm& f, const TwistSpec& tw, cplx s,
                        long M) {
    auto& src = const_cast<CoeffSource&>(*f.coeffs);
    src.ensure(M);
    M = std::min(M, src.available());
    cplx sum = 0.0;
    for (long n = 1; n <= M; ++n) {
        double a = src.coeff(n);
        if (a != 0.0)
            sum += a * unit_root(tw.p * n, tw.q) *
                   std::exp(-s * std::log(static_cast<double>(n)));
    }
    LValue out;
    double q = tw.trivial ? 1.0 : static_cast<double>(tw.q);
    cplx fac = std::exp(-s * std::log(2.0 * kPi / q) + log_gamma(s));
    out.value = fac * sum;
    out.terms_used = M;
    double sig = s.real();
    out.abs_err = (sig > f.growth_exp + 1.0)
                      ? std::abs(fac) * f.growth_C *
                            std::pow(static_cast<double>(M),
                                     f.growth_exp + 1.0 - sig) /
                            (sig - f.growth_exp - 1.0)
                      : 1e300;
    return out;
}

ZValue z_twisted(const HalfIntegralForm& f, const TwistSpec& tw, double t,
                 double eps_abs) {
    if (!tw.involutive || tw.trivial ||
        f.coeff_class != HalfIntegralForm::CoeffClass::Real)
        throw NonInvolutiveTwist("z_twisted: needs p^2 = 1 (mod q), real a_f");
    if (!tw.cusp_ok) throw InvalidCusp("z_twisted: cusp not ~ infinity");
    double kap = f.kappa();
    // c = i^{-kappa/2} (-q/p)^{kappa} eps_p^{kappa}; the square root branch is
    // then fixed so that c^2 omega = 1, which is what makes Z real-valued.
    int j = shimura_jacobi(-tw.q, tw.p);
    cplx c = std::exp(cplx(0.0, -kPi * kap / 4.0));
    if (j < 0) c *= std::exp(cplx(0.0, kPi * kap));
    cplx eps = epsilon_d(tw.p);
    if (eps.imag() != 0.0) c *= std::exp(cplx(0.0, kPi * kap / 2.0));
    if (std::abs(c * c * tw.omega - 1.0) > 0.5) c *= cplx(0.0, 1.0);
    LValue eta = twisted_lambda(f, tw, cplx(f.sigma0(), t), eps_abs);
    cplx z = c * eta.value;
    ZValue out;
    out.value = z.real();
    out.imag_residual = std::abs(z.imag());
    out.abs_err = eta.abs_err;
    return out;
}

namespace {

// c must be the first index with a_f(c) != 0: only then does
// c^s L(s) - a(c) = sum_{n>c} a(n)(n/c)^{-s} decay along the ray.
void require_leading_index(const HalfIntegralForm& f, long c,
                           const char* where) {
    if (c < 1) throw Error(std::string(where) + ": c must be >= 1");
    const_cast<CoeffSource&>(*f.coeffs).ensure(c);
    if (f.coeffs->coeff(c) == 0.0)
        throw Error(std::string(where) + ": a_f(c) must be nonzero");
    for (long n = 1; n < c; ++n)
        if (f.coeffs->coeff(n) != 0.0)
            throw Error(std::string(where) +
                        ": c must be the first nonzero coefficient index");
}

}  // namespace

LValue l_star(const HalfIntegralForm& f, long c, cplx s, double eps_abs) {
    require_leading_index(f, c, "l_star");
    LValue L = l_value(f, s, eps_abs);
    cplx cs = std::exp(s * std::log(static_cast<double>(c)));
    const_cast<CoeffSource&>(*f.coeffs).ensure(c);
    L.value = cs * L.value - f.coeffs->coeff(c);
    L.abs_err = std::abs(cs) * L.abs_err + 1e-15 * std::abs(L.value);
    L.exact_zero = false;
    return L;
}

namespace {

// Shared ray-integral engine for L(s, f_1) and psi_f: value(s) =
// r^{-s} int_0^infty (r^{s+x} L(s+x) - a(r)) dx with L either the plain or
// the averaged Dirichlet series.
LValue ray_integral(const HalfIntegralForm& f, long r, cplx s, double eps_abs,
                    bool averaged) {
    require_leading_index(f, r, "ray_integral");
    const_cast<CoeffSource&>(*f.fricke_coeffs).ensure(r);
    double ar = averaged
                    ? 0.5 * (f.coeffs->coeff(r) + f.fricke_coeffs->coeff(r))
                    : f.coeffs->coeff(r);
    if (averaged && ar == 0.0)
        throw DegenerateAveragedForm("ray_integral: alpha_f(r) = 0");
    double sig = s.real();
    double ae = f.growth_exp;
    // Tail of |L*(s+x)|: beyond x0 the series converges absolutely and the
    // whole integrand is below S0 e^{-lambda (x - x0)}.
    double x0 = std::max(0.0, ae + 2.0 - sig);
    double S0 = f.growth_C * std::pow(static_cast<double>(r), ae + 1.0) + 1.0;
    double lam = std::log((r + 1.0) / r);
    double X = x0 + std::log(S0 / (lam * (eps_abs / 10.0))) / lam;
    auto integrand = [&](double x) -> cplx {
        cplx z = s + x;
        LValue L = averaged ? phi_f(f, z, eps_abs / (4.0 * X))
                            : l_value(f, z, eps_abs / (4.0 * X));
        return std::exp(z * std::log(static_cast<double>(r))) * L.value - ar;
    };
    QuadResult qr = integrate(integrand, 0.0, X, eps_abs / 4.0, 1e-11);
    LValue out;
    cplx pre = std::exp(-s * std::log(static_cast<double>(r)));
    out.value = pre * qr.value;
    out.abs_err = std::abs(pre) * (qr.abs_err + eps_abs / 10.0) +
                  std::abs(pre) * eps_abs / 4.0;
    out.terms_used = qr.evals;
    return out;
}

}  // namespace

LValue l_f1(const HalfIntegralForm& f, long c, cplx s, double eps_abs) {
    return ray_integral(f, c, s, eps_abs, false);
}

LValue l_f1_direct(const HalfIntegralForm& f, long c, cplx s, long M) {
    if (c < 1) throw Error("l_f1_direct: c must be >= 1");
    auto& src = const_cast<CoeffSource&>(*f.coeffs);
    src.ensure(M);
    M = std::min(M, src.available());
    cplx sum = 0.0;
    for (long n = c + 1; n <= M; ++n) {
        double a = src.coeff(n);
        if (a != 0.0)
            sum += a / std::log(static_cast<double>(n) / c) *
                   std::exp(-s * std::log(static_cast<double>(n)));
    }
    LValue out;
    out.value = sum;
    out.terms_used = M;
    double sig = s.real();
    out.abs_err =
        (sig > f.growth_exp + 1.0)
            ? f.growth_C / std::log((M + 1.0) / c) *
                  std::pow(static_cast<double>(M), f.growth_exp + 1.0 - sig) /
                  (sig - f.growth_exp - 1.0)
            : 1e300;
    return out;
}

LValue phi_f(const HalfIntegralForm& f, cplx s, double eps_abs) {
    LValue out;
    if (near_nonpositive_integer(s)) {
        out.exact_zero = true;
        out.value = 0.0;
        return out;
    }
    auto [lf, lw] = lambda_pair(f, s, eps_abs);
    cplx fac =
        std::exp(s * std::log(2.0 * kPi / f.sqrt_level()) - log_gamma(s));
    out.value = 0.5 * (lf.value + lw.value) * fac;
    out.abs_err = lf.abs_err * std::abs(fac) + std::abs(out.value) * 1e-13;
    out.terms_used = lf.terms_used;
    return out;
}

LValue psi_f(const HalfIntegralForm& f, long r, cplx s, double eps_abs) {
    return ray_integral(f, r, s, eps_abs, true);
}

cplx big_psi(const HalfIntegralForm& f, long r, double t, double H,
             double eps_abs) {
    const_cast<CoeffSource&>(*f.coeffs).ensure(r);
    const_cast<CoeffSource&>(*f.fricke_coeffs).ensure(r);
    double ar = 0.5 * (f.coeffs->coeff(r) + f.fricke_coeffs->coeff(r));
    if (ar == 0.0)
        throw DegenerateAveragedForm("big_psi: alpha_f(r) = 0");
    double s0 = f.sigma0();
    double lr = std::log(static_cast<double>(r));
    cplx psi1 = psi_f(f, r, cplx(s0, t), eps_abs).value;
    cplx psi2 = psi_f(f, r, cplx(s0, t + H), eps_abs).value;
    cplx term = std::exp(cplx(0.0, t * lr)) * psi1 -
                std::exp(cplx(0.0, (t + H) * lr)) * psi2;
    return cplx(0.0, -1.0) * std::pow(static_cast<double>(r), s0) / ar * term;
}

}  // namespace hil
