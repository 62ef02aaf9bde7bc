#include "hil/mp_lambda.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "hil/lfunc.hpp"
#include "hil/special.hpp"

namespace hil {

namespace {

namespace bmp = boost::multiprecision;

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr int kGL = 96;          // nodes per panel
constexpr double kCycles = 6.0;  // max y^{it} cycles per panel
constexpr double kSigmaCap = 8.0;  // engine handles Re s <= this

// Cancellation in the oscillatory integral eats ~ pi |t| / (2 ln 10) decimal
// digits; the rest is output accuracy plus margin.
double digits_needed(double t) { return 0.6822 * std::abs(t) + 26.0; }

template <int D>
struct Engine {
    using Real = bmp::number<bmp::cpp_bin_float<D>>;
    using CReal = std::pair<Real, Real>;  // (re, im)

    double kappa_ = 0, sigma0_ = 0, sqL_ = 2;
    std::vector<Real> u_;    // ln y per node
    std::vector<Real> A_;    // jacobian * weight * F(iy)
    std::vector<Real> B_;    // jacobian * weight * (F|W)(iy)
    std::vector<Real> yk2_;  // y^{kappa - 2}
    // Critical-line fast path, s = sigma0 + it:
    //   Lambda_f = sum (C1 cos + i S1 sin)(t ln y),  Lambda_w with C2, S2.
    std::vector<Real> c1_, s1_, c2_, s2_;
    Real crit_scale_ = 0;  // sum of term magnitudes (cancellation floor)

    struct SigmaArrays {
        std::vector<Real> e1;  // y^{sigma - 1}; the rest is recombined per
                               // eval so hundreds of sigma values stay cached
        Real scale = 0;
    };
    std::mutex cache_mu_;
    std::map<double, std::shared_ptr<SigmaArrays>> sigma_cache_;
    std::map<double, std::shared_ptr<std::pair<std::vector<Real>,
                                               std::vector<Real>>>> trig_cache_;

    void build(const HalfIntegralForm& f, double tmax) {
        kappa_ = f.kappa();
        sigma0_ = f.sigma0();
        sqL_ = f.sqrt_level();
        // The decay rate 2 pi / sqrt(4N) must be exact at working precision:
        // a double-rounded rate perturbs the integrand at 1e-16 of term
        // scale, far above the cancellation floor.
        const Real c_mp =
            2 * acos(Real(-1)) / sqrt(Real(f.level));
        const double c = 2.0 * kPi / sqL_;
        const double ln10 = std::log(10.0);
        // e^{-c y} y^{sigma-1} below 10^{-(D+8)} at the cutoff for all
        // sigma <= kSigmaCap.
        double ymax = (D + 8.0) * ln10 / c + 1.0;
        ymax += (kSigmaCap - 1.0) * std::log(ymax + 16.0) / c;

        std::vector<Real> gx, gw;
        gauss_legendre(gx, gw);

        // Coefficient demand at y = 1 bounds every node.
        long nmax1 = coeff_count(f, c, 1.0);
        auto& src = const_cast<CoeffSource&>(*f.coeffs);
        auto& srcW = const_cast<CoeffSource&>(*f.fricke_coeffs);
        if (!src.ensure(nmax1) || !srcW.ensure(nmax1))
            throw InsufficientCoefficients("mp lambda: coefficient supply");

        double y0 = 1.0;
        while (y0 < ymax) {
            double w = std::min(2.0, kCycles * 2.0 * kPi * y0 / tmax);
            double y1 = std::min(y0 + w, ymax);
            Real a(y0), h(Real(y1 - y0) / 2), mid = a + h;
            for (int i = 0; i < kGL; ++i) {
                Real y = mid + h * gx[i];
                Real wj = gw[i] * h;
                Real q = exp(-c_mp * y);
                long m = coeff_count(f, c, y0);
                Real F(0), G(0), qn(1);
                for (long n = 1; n <= m; ++n) {
                    qn *= q;
                    F += Real(src.coeff(n)) * qn;
                    G += Real(srcW.coeff(n)) * qn;
                }
                u_.push_back(log(y));
                A_.push_back(wj * F);
                B_.push_back(wj * G);
                yk2_.push_back(exp(Real(kappa_ - 2.0) * u_.back()));
            }
            y0 = y1;
        }

        const size_t n = u_.size();
        c1_.resize(n);
        s1_.resize(n);
        c2_.resize(n);
        s2_.resize(n);
        for (size_t i = 0; i < n; ++i) {
            Real e1 = exp(Real(sigma0_ - 1.0) * u_[i]);
            Real e2 = yk2_[i] / e1;
            Real ay1 = A_[i] * e1, ay2 = A_[i] * e2;
            Real by1 = B_[i] * e1, by2 = B_[i] * e2;
            c1_[i] = ay1 + by2;
            s1_[i] = ay1 - by2;
            c2_[i] = by1 + ay2;
            s2_[i] = by1 - ay2;
            crit_scale_ += abs(ay1) + abs(ay2) + abs(by1) + abs(by2);
        }
    }

    static long coeff_count(const HalfIntegralForm& f, double c, double y) {
        // smallest m with C (m+1)^e exp(-c y m) below the target, floor 8
        double target = -(D + 8.0) * std::log(10.0) - c * y;
        long m = 8;
        while (std::log(f.growth_C + 1.0) +
                   f.growth_exp * std::log(m + 1.0) - c * y * m >
               target)
            ++m;
        return m;
    }

    static void gauss_legendre(std::vector<Real>& x, std::vector<Real>& w) {
        x.resize(kGL);
        w.resize(kGL);
        for (int i = 0; i < kGL; ++i) {
            Real xi(std::cos(kPi * (i + 0.75) / (kGL + 0.5)));
            Real dp(1);
            for (int it = 0; it < 10; ++it) {
                Real pm(0), p(1);
                for (int k = 1; k <= kGL; ++k) {
                    Real pn = (Real(2 * k - 1) * xi * p - Real(k - 1) * pm) /
                              Real(k);
                    pm = p;
                    p = pn;
                }
                dp = Real(kGL) * (xi * p - pm) / (xi * xi - 1);
                xi -= p / dp;
            }
            x[i] = xi;
            w[i] = 2 / ((1 - xi * xi) * dp * dp);
        }
    }

    std::pair<MpEval, MpEval> eval_critical(double t) const {
        const size_t n = u_.size();
        Real rf(0), mf(0), rw(0), mw(0), tt(t);
        for (size_t i = 0; i < n; ++i) {
            Real ang = tt * u_[i];
            Real c = cos(ang), s = sin(ang);
            rf += c1_[i] * c;
            mf += s1_[i] * s;
            rw += c2_[i] * c;
            mw += s2_[i] * s;
        }
        return package(rf, mf, rw, mw, crit_scale_);
    }

    std::pair<MpEval, MpEval> eval(double sigma, double t) {
        if (sigma == sigma0_) return eval_critical(t);
        std::shared_ptr<SigmaArrays> sa;
        std::shared_ptr<std::pair<std::vector<Real>, std::vector<Real>>> tr;
        {
            std::lock_guard<std::mutex> lk(cache_mu_);
            if (sigma_cache_.size() > 256) sigma_cache_.clear();
            if (trig_cache_.size() > 16) trig_cache_.clear();
            auto& slot = sigma_cache_[sigma];
            if (!slot) slot = make_sigma(sigma);
            sa = slot;
            auto& tslot = trig_cache_[t];
            if (!tslot) tslot = make_trig(t);
            tr = tslot;
        }
        const size_t n = u_.size();
        Real rf(0), mf(0), rw(0), mw(0);
        for (size_t i = 0; i < n; ++i) {
            const Real& c = tr->first[i];
            const Real& s = tr->second[i];
            const Real& e1 = sa->e1[i];
            Real e2 = yk2_[i] / e1;
            Real p1 = A_[i] * e1, p2 = B_[i] * e2;
            Real p3 = B_[i] * e1, p4 = A_[i] * e2;
            rf += (p1 + p2) * c;
            mf += (p1 - p2) * s;
            rw += (p3 + p4) * c;
            mw += (p3 - p4) * s;
        }
        return package(rf, mf, rw, mw, sa->scale);
    }

    std::shared_ptr<SigmaArrays> make_sigma(double sigma) const {
        auto sa = std::make_shared<SigmaArrays>();
        const size_t n = u_.size();
        sa->e1.resize(n);
        for (size_t i = 0; i < n; ++i) {
            Real e1 = exp(Real(sigma - 1.0) * u_[i]);
            Real e2 = yk2_[i] / e1;
            sa->e1[i] = e1;
            sa->scale += (abs(A_[i]) + abs(B_[i])) * (e1 + e2);
        }
        return sa;
    }

    // r_f, i_f on the uniform grid t0 + j h: the per-node oscillation is
    // advanced by a rotation recurrence instead of fresh trig calls, which
    // is what makes long critical-line sweeps affordable.
    void sweep(double t0, double h, long count, double* r_out,
               double* i_out) const {
        const size_t n = u_.size();
        std::vector<Real> racc(count, Real(0)), iacc(count, Real(0));
        for (size_t i = 0; i < n; ++i) {
            Real rs = (c1_[i] + c2_[i]) / 2;
            Real is = (s1_[i] - s2_[i]) / 2;
            Real ang = Real(t0) * u_[i];
            Real c = cos(ang), s = sin(ang);
            Real dang = Real(h) * u_[i];
            Real rc = cos(dang), rss = sin(dang);
            for (long j = 0; j < count; ++j) {
                racc[j] += rs * c;
                iacc[j] += is * s;
                Real cn = c * rc - s * rss;
                s = s * rc + c * rss;
                c = cn;
            }
        }
        for (long j = 0; j < count; ++j) {
            r_out[j] = static_cast<double>(racc[j]);
            i_out[j] = static_cast<double>(iacc[j]);
        }
    }

    std::shared_ptr<std::pair<std::vector<Real>, std::vector<Real>>> make_trig(
        double t) const {
        auto tr =
            std::make_shared<std::pair<std::vector<Real>, std::vector<Real>>>();
        const size_t n = u_.size();
        tr->first.resize(n);
        tr->second.resize(n);
        Real tt(t);
        for (size_t i = 0; i < n; ++i) {
            Real ang = tt * u_[i];
            tr->first[i] = cos(ang);
            tr->second[i] = sin(ang);
        }
        return tr;
    }

    std::pair<MpEval, MpEval> package(const Real& rf, const Real& mf,
                                      const Real& rw, const Real& mw,
                                      const Real& scale) const {
        MpEval f, w;
        f.value = cplx(static_cast<double>(rf), static_cast<double>(mf));
        w.value = cplx(static_cast<double>(rw), static_cast<double>(mw));
        double floor_err =
            static_cast<double>(scale) * std::pow(10.0, 2.0 - D);
        f.abs_err = w.abs_err =
            floor_err + 1e-15 * std::max(std::abs(f.value), std::abs(w.value));
        f.nodes = w.nodes = static_cast<long>(u_.size());
        return {f, w};
    }
};

struct Key {
    const void* a;
    const void* b;
    long level;
    int k;
    bool operator<(const Key& o) const {
        return std::tie(a, b, level, k) < std::tie(o.a, o.b, o.level, o.k);
    }
};

template <int D>
Engine<D>& engine_for(const HalfIntegralForm& f, double tmax) {
    static std::map<Key, std::shared_ptr<Engine<D>>> cache;
    static std::mutex mu;
    Key key{f.coeffs.get(), f.fricke_coeffs.get(), f.level, f.k};
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = cache[key];
    if (!slot) {
        slot = std::make_shared<Engine<D>>();
        slot->build(f, tmax);
    }
    return *slot;
}

// Plain Dirichlet route for Re s beyond the engine cap: the series converges
// absolutely there, so Lambda = (2 pi / sqrt(4N))^{-s} Gamma(s) L is cheap at
// any height.
std::pair<MpEval, MpEval> direct_pair(const HalfIntegralForm& f, cplx s) {
    auto& src = const_cast<CoeffSource&>(*f.coeffs);
    auto& srcW = const_cast<CoeffSource&>(*f.fricke_coeffs);
    const double sig = s.real();
    cplx Lf = 0, Lw = 0;
    double tail = 1e300;
    long n = 0;
    while (tail > 1e-18 && n < 2000000) {
        ++n;
        if (!src.ensure(n) || !srcW.ensure(n))
            throw InsufficientCoefficients("lambda direct: coefficient supply");
        cplx ns = std::pow(static_cast<double>(n), -s);
        Lf += src.coeff(n) * ns;
        Lw += srcW.coeff(n) * ns;
        double e = f.growth_exp - sig;
        if (n > 8 && e < -1.1)
            tail = 2.0 * f.growth_C * std::pow(n + 1.0, e + 1.0) / (-e - 1.0);
    }
    cplx pref = std::exp(-s * std::log(2.0 * kPi / f.sqrt_level()) +
                         log_gamma(s));
    MpEval a, b;
    a.value = pref * Lf;
    b.value = pref * Lw;
    a.abs_err = b.abs_err =
        std::abs(pref) * (tail + 1e-15 * (std::abs(Lf) + std::abs(Lw)));
    a.nodes = b.nodes = n;
    return {a, b};
}

}  // namespace

bool mp_lambda_supported(double im_s) { return std::abs(im_s) <= 150.0; }

std::pair<MpEval, MpEval> mp_lambda_pair(const HalfIntegralForm& f, cplx s) {
    const double t = s.imag();
    if (!mp_lambda_supported(t))
        throw Error("mp lambda: |Im s| beyond supported range");
    if (s.real() > kSigmaCap) return direct_pair(f, s);
    const double d = digits_needed(t);
    if (d <= 60.0) {
        auto& e = engine_for<60>(f, 50.0);
        return e.eval(s.real(), t);
    }
    if (d <= 90.0) {
        auto& e = engine_for<90>(f, 94.0);
        return e.eval(s.real(), t);
    }
    auto& e = engine_for<130>(f, 152.0);
    return e.eval(s.real(), t);
}

void critical_sweep(const HalfIntegralForm& f, double t0, double h, long count,
                    std::vector<double>& r_out, std::vector<double>& i_out) {
    if (h <= 0.0 || count < 1) throw Error("critical_sweep: bad grid");
    r_out.assign(count, 0.0);
    i_out.assign(count, 0.0);
    long j = 0;
    while (j < count) {
        double t = t0 + j * h;
        if (std::abs(t) <= 16.0 || !mp_lambda_supported(t)) {
            auto [lf, lw] = lambda_pair(f, {f.sigma0(), t}, 1e-13);
            r_out[j] = 0.5 * (lf.value + lw.value).real();
            i_out[j] = 0.5 * (lf.value - lw.value).imag();
            ++j;
            continue;
        }
        // Maximal run in the same precision tier; |t| is monotone within a
        // half-line, so tier changes only at run boundaries.
        double d = digits_needed(t);
        int tier = d <= 60.0 ? 0 : d <= 90.0 ? 1 : 2;
        long j2 = j;
        while (j2 + 1 < count) {
            double tn = t0 + (j2 + 1) * h;
            if (std::abs(tn) <= 16.0 || !mp_lambda_supported(tn)) break;
            double dn = digits_needed(tn);
            int tn_tier = dn <= 60.0 ? 0 : dn <= 90.0 ? 1 : 2;
            if (tn_tier != tier) break;
            ++j2;
        }
        long run = j2 - j + 1;
        if (tier == 0)
            engine_for<60>(f, 50.0).sweep(t, h, run, &r_out[j], &i_out[j]);
        else if (tier == 1)
            engine_for<90>(f, 94.0).sweep(t, h, run, &r_out[j], &i_out[j]);
        else
            engine_for<130>(f, 152.0).sweep(t, h, run, &r_out[j], &i_out[j]);
        j = j2 + 1;
    }
}

double critical_envelope(const HalfIntegralForm& f, double t) {
    const double s0 = f.sigma0();
    double env = std::sqrt(2.0 * kPi) *
                 std::pow(t * t + 6.25, 0.5 * (s0 - 0.5)) *
                 std::exp(-0.5 * kPi * std::abs(t));
    return env * std::pow(2.0 * kPi / f.sqrt_level(), -s0);
}

}  // namespace hil
