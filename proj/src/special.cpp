#include "hil/special.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace hil {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

// B_{2n} / (2n (2n-1)) for the Stirling series.
constexpr double kStirlingCoef[] = {
    1.0 / 12.0,          -1.0 / 360.0,         1.0 / 1260.0,
    -1.0 / 1680.0,       1.0 / 1188.0,         -691.0 / 360360.0,
    1.0 / 156.0,         -3617.0 / 122400.0,
};

bool near_nonpositive_integer(cplx s, double tol) {
    if (s.real() > 0.5) return false;
    double r = std::round(s.real());
    return std::abs(s.real() - r) <= tol && std::abs(s.imag()) <= tol;
}

// log sin(pi s) without overflow for large |Im s|.
cplx log_sin_pi(cplx s) {
    if (s.imag() < 0.0) return std::conj(log_sin_pi(std::conj(s)));
    const cplx i(0.0, 1.0);
    cplx w = std::exp(2.0 * kPi * i * s);  // |w| <= 1
    return -i * kPi * s + std::log((w - 1.0) / (2.0 * i));
}

cplx stirling_log_gamma(cplx z) {
    cplx r = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi);
    cplx zi = 1.0 / z, zpow = zi;
    cplx z2 = zi * zi;
    for (double c : kStirlingCoef) {
        r += c * zpow;
        zpow *= z2;
    }
    return r;
}

// Continued fraction for Gamma(s,x), valid for x moderately larger than |s|.
GammaValue cf_upper_gamma(cplx s, double x) {
    const double tiny = 1e-290;
    cplx b = x + 1.0 - s;
    cplx c = 1.0 / tiny, d = 1.0 / b, h = d;
    int k = 1;
    for (; k <= 10000; ++k) {
        cplx an = -static_cast<double>(k) * (static_cast<double>(k) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        cplx delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    GammaValue out;
    cplx lg = -x + s * std::log(cplx(x));
    out.value = std::exp(lg) * h;
    out.abs_err = std::abs(out.value) * 1e-14 * (1.0 + k / 100.0);
    return out;
}

// E_1(x) = Gamma(0, x) for real x > 0.
double expint_e1(double x) {
    if (x >= 1.5) {
        // Continued fraction, the s = 0 case of cf_upper_gamma.
        double b = x + 1.0, c = 1e290, d = 1.0 / b, h = d;
        for (int k = 1; k <= 10000; ++k) {
            double an = -static_cast<double>(k) * k;
            b += 2.0;
            d = an * d + b;
            if (std::abs(d) < 1e-290) d = 1e-290;
            c = b + an / c;
            if (std::abs(c) < 1e-290) c = 1e-290;
            d = 1.0 / d;
            double delta = d * c;
            h *= delta;
            if (std::abs(delta - 1.0) < 1e-16) break;
        }
        return std::exp(-x) * h;
    }
    double sum = -kEulerGamma - std::log(x), term = 1.0;
    for (int k = 1; k <= 200; ++k) {
        term *= -x / k;
        sum -= term / k;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

// Series route: Gamma(s) - gamma(s,x); requires s away from the poles.
GammaValue series_upper_gamma(cplx s, double x) {
    cplx term = 1.0 / s, sum = term;
    double sumabs = std::abs(term);
    int n = 1;
    for (; n <= 20000; ++n) {
        term *= x / (s + static_cast<double>(n));
        sum += term;
        sumabs += std::abs(term);
        if (std::abs(term) < 1e-17 * std::abs(sum) && n > 4) break;
    }
    cplx prefac = std::exp(s * std::log(cplx(x)) - x);
    cplx lower = prefac * sum;
    cplx gs = std::exp(log_gamma(s));
    GammaValue out;
    out.value = gs - lower;
    double scale = std::abs(gs) + std::abs(prefac) * sumabs;
    out.abs_err = scale * 3e-15;
    if (std::abs(out.value) > 0.0 &&
        scale / std::abs(out.value) > 6.7e7)  // > 2^26: half the mantissa gone
        out.loss_of_precision = true;
    return out;
}

GammaValue upper_gamma_dispatch(cplx s, double x);

// Near-pole route: downward recurrence from a well-conditioned shift, seeded
// at E_1(x) when the path crosses s = 0 exactly.
GammaValue recurrence_upper_gamma(cplx s, double x) {
    long n0 = std::lround(s.real());
    long m = 1 - n0;  // Re(s + m) is near 1
    GammaValue cur = upper_gamma_dispatch(s + static_cast<double>(m), x);
    for (long j = m - 1; j >= 0; --j) {
        cplx sj = s + static_cast<double>(j);
        cplx p = std::exp(sj * std::log(cplx(x)) - x);
        if (sj == cplx(0.0, 0.0)) {
            cur.value = expint_e1(x);
            cur.abs_err = std::abs(cur.value) * 1e-14 + 1e-300;
            continue;
        }
        cur.value = (cur.value - p) / sj;
        cur.abs_err = (cur.abs_err + std::abs(p) * 3e-16) / std::abs(sj) +
                      std::abs(cur.value) * 2e-16;
    }
    return cur;
}

GammaValue upper_gamma_dispatch(cplx s, double x) {
    if (x >= std::abs(s) + 2.0) return cf_upper_gamma(s, x);
    if (near_nonpositive_integer(s, 0.25)) return recurrence_upper_gamma(s, x);
    return series_upper_gamma(s, x);
}

}  // namespace

cplx log_gamma(cplx s) {
    if (near_nonpositive_integer(s, 1e-12))
        throw PoleAtNonPositiveInteger("log_gamma: pole at non-positive integer");
    if (s.real() < 0.5)
        return std::log(kPi) - log_sin_pi(s) - log_gamma(1.0 - s);
    cplx acc = 0.0;
    while (std::abs(s) < 12.0) {
        acc += std::log(s);
        s += 1.0;
    }
    return stirling_log_gamma(s) - acc;
}

GammaValue gamma_fn(cplx s) {
    GammaValue out;
    out.value = std::exp(log_gamma(s));
    out.abs_err = std::abs(out.value) * 5e-15;
    return out;
}

GammaValue upper_incomplete_gamma(cplx s, double x) {
    if (!(x > 0.0)) throw NonPositiveX("upper_incomplete_gamma: x must be > 0");
    return upper_gamma_dispatch(s, x);
}

GammaValue g_factor(cplx w, double x) {
    if (!(x > 0.0)) throw NonPositiveX("g_factor: x must be > 0");
    if (x > 600.0) {
        // Gamma(w,x) underflows well before this; bound the remainder.
        GammaValue out;
        out.value = 0.0;
        out.abs_err = std::exp(-x - std::log(x)) * 2.0;
        return out;
    }
    GammaValue g = upper_gamma_dispatch(w, x);
    cplx scale = std::exp(-w * std::log(cplx(x)));
    GammaValue out;
    out.value = g.value * scale;
    out.abs_err = g.abs_err * std::abs(scale) + std::abs(out.value) * 2e-16;
    out.loss_of_precision = g.loss_of_precision;
    return out;
}

double stirling_modulus(double sigma, double t) {
    return std::sqrt(2.0 * kPi) * std::pow(std::abs(t), sigma - 0.5) *
           std::exp(-kPi * std::abs(t) / 2.0);
}

cplx epsilon_d(long d) {
    if (d % 2 == 0) throw EvenArgument("epsilon_d: d must be odd");
    long r = ((d % 4) + 4) % 4;
    return r == 1 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
}

int shimura_jacobi(long c, long d) {
    if (d % 2 == 0 || d == 0)
        throw UndefinedSymbol("shimura_jacobi: d must be odd and nonzero");
    if (d < 0) {
        int base = shimura_jacobi(c, -d);
        return c < 0 ? -base : base;
    }
    if (d == 1) return 1;
    long a = c % d;
    if (a < 0) a += d;
    long n = d;
    int r = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long n8 = n % 8;
            if (n8 == 3 || n8 == 5) r = -r;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) r = -r;
        a %= n;
    }
    return n == 1 ? r : 0;
}

}  // namespace hil
