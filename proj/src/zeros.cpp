#include "hil/zeros.hpp"

#include <algorithm>
#include <cmath>

#include "hil/mp_lambda.hpp"

namespace hil {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void bisect_zero(const std::function<double(double)>& fn, double a, double b,
                 double fa, double fb, double tol, ZeroScanReport& rep) {
    while (b - a > tol) {
        double m = 0.5 * (a + b);
        double fm = fn(m);
        ++rep.evals;
        if ((fa < 0) != (fm < 0)) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
        if (fm == 0.0) break;
    }
    (void)fb;
    rep.zeros.push_back(0.5 * (a + b));
}

void scan_segment(const std::function<double(double)>& fn, double a, double b,
                  double fa, double fb, double scale, int depth,
                  double loc_tol, ZeroScanReport& rep) {
    if ((fa < 0) != (fb < 0)) {
        bisect_zero(fn, a, b, fa, fb, loc_tol, rep);
        return;
    }
    // Same sign: look closer if either endpoint is small against the local
    // scale (possible pair of zeros inside the step).
    if (depth > 0 && std::min(std::abs(fa), std::abs(fb)) < 0.25 * scale) {
        double m = 0.5 * (a + b);
        double fm = fn(m);
        ++rep.evals;
        scan_segment(fn, a, m, fa, fm, scale, depth - 1, loc_tol, rep);
        scan_segment(fn, m, b, fm, fb, scale, depth - 1, loc_tol, rep);
    }
}

}  // namespace

ZeroScanReport scan_sign_changes(const std::function<double(double)>& fn,
                                 double t_lo, double t_hi, double base_step,
                                 double loc_tol) {
    ZeroScanReport rep;
    rep.t_lo = t_lo;
    rep.t_hi = t_hi;
    long steps = std::max(1L, std::lround(std::ceil((t_hi - t_lo) / base_step)));
    double h = (t_hi - t_lo) / steps;
    double prev_t = t_lo, prev_f = fn(t_lo);
    ++rep.evals;
    double scale = std::abs(prev_f);
    for (long i = 1; i <= steps; ++i) {
        double t = t_lo + i * h;
        double ft = fn(t);
        ++rep.evals;
        scale = std::max(0.9 * scale, std::abs(ft));
        scan_segment(fn, prev_t, t, prev_f, ft, scale, 6, loc_tol, rep);
        prev_t = t;
        prev_f = ft;
    }
    std::sort(rep.zeros.begin(), rep.zeros.end());
    return rep;
}

namespace {

struct Contour {
    const HalfIntegralForm* f;
    double eps;
    double min_abs = 1e300;
    bool too_close = false;  // some |Lambda| within 10x of its own abs_err
    long evals = 0;

    cplx eval(cplx s) {
        LValue v = lambda_completed(*f, s, eps);
        min_abs = std::min(min_abs, std::abs(v.value));
        if (std::abs(v.value) <= 10.0 * v.abs_err) too_close = true;
        ++evals;
        return v.value;
    }

    // Initial nodes per edge sized to the gamma-factor phase rate
    // d arg Lambda / d|s| ~ ln|s|, with a 2x margin so no piece can alias a
    // full turn past the pi/2 refinement trigger below.
    static int pieces_for(cplx a, cplx b) {
        double rate = std::log(2.0 + std::max(std::abs(a), std::abs(b))) + 1.0;
        int p = static_cast<int>(std::ceil(std::abs(b - a) * rate / 0.7));
        return std::clamp(p, 8, 4000);
    }

    // Accumulated argument change along the segment [a, b], refined until
    // each piece turns by less than pi/2.
    double delta_arg(cplx a, cplx b, cplx fa, cplx fb, int depth) {
        double d = std::arg(fb / fa);
        if (std::abs(d) < kPi / 2.0 || depth <= 0) return d;
        cplx m = 0.5 * (a + b);
        cplx fm = eval(m);
        return delta_arg(a, m, fa, fm, depth - 1) +
               delta_arg(m, b, fm, fb, depth - 1);
    }
};

}  // namespace

RectCount count_zeros_rectangle(const HalfIntegralForm& f, double s1,
                                double s2, double t1, double t2,
                                double eps_abs) {
    RectCount rc;
    double nudge = 0.0;
    for (int attempt = 0;; ++attempt) {
        // Evaluate tighter than the caller's tolerance: the reported abs_err
        // tracks the truncation target, and on the t in [13, 16] stretch of
        // the boundary |Lambda| itself sits near 1e-9, so an eps_abs-sized
        // error bar would flag every such contour as grazing a zero.
        Contour ct{&f, std::min(eps_abs, 1e-13)};
        double a = s1 - nudge, b = s2 + nudge, c = t1 - nudge, d = t2 + nudge;
        cplx corners[5] = {{a, c}, {b, c}, {b, d}, {a, d}, {a, c}};
        double total = 0.0;
        bool ok = true;
        for (int e = 0; e < 4 && ok; ++e) {
            cplx za = corners[e], zb = corners[e + 1];
            int pieces = Contour::pieces_for(za, zb);
            cplx prev = za, fprev = ct.eval(prev);
            for (int i = 1; i <= pieces; ++i) {
                cplx z = za + (zb - za) * (static_cast<double>(i) / pieces);
                cplx fz = ct.eval(z);
                total += ct.delta_arg(prev, z, fprev, fz, 24);
                prev = z;
                fprev = fz;
                if (ct.too_close) {
                    ok = false;
                    break;
                }
            }
        }
        rc.evals += ct.evals;
        if (ok) {
            rc.min_boundary_abs = ct.min_abs;
            double w = total / (2.0 * kPi);
            rc.count = std::lround(w);
            rc.s1 = a;
            rc.s2 = b;
            rc.t1 = c;
            rc.t2 = d;
            rc.nudges = attempt;
            if (std::abs(w - rc.count) > 0.25)
                throw IntegrationFailure(
                    "count_zeros_rectangle: winding not integral");
            return rc;
        }
        if (attempt >= 3)
            throw BoundaryZeroSuspected(
                "count_zeros_rectangle: contour too close to a zero");
        nudge = (attempt + 1) * 0.0137;  // irrational-ish offsets
    }
}

namespace {

bool newton_refine(const HalfIntegralForm& f, cplx& s, double eps_abs) {
    for (int it = 0; it < 60; ++it) {
        double h = 1e-6 * (1.0 + std::abs(s));
        cplx f0 = lambda_completed(f, s, eps_abs).value;
        cplx fp = (lambda_completed(f, s + h, eps_abs).value -
                   lambda_completed(f, s - h, eps_abs).value) /
                  (2.0 * h);
        if (std::abs(fp) == 0.0) return false;
        cplx step = f0 / fp;
        s -= step;
        if (std::abs(step) < 1e-10 * (1.0 + std::abs(s))) return true;
        if (std::abs(s) > 1e4) return false;
    }
    return false;
}

void subdivide(const HalfIntegralForm& f, double s1, double s2, double t1,
               double t2, int depth, std::vector<OfflineZero>& out,
               double line_tol, double eps_abs) {
    RectCount rc;
    try {
        rc = count_zeros_rectangle(f, s1, s2, t1, t2, eps_abs);
    } catch (const BoundaryZeroSuspected&) {
        // Shrink slightly and retry once; give up on this cell if it
        // persists (the zero sits essentially on the requested boundary).
        try {
            rc = count_zeros_rectangle(f, s1 + 3e-3, s2 - 3e-3, t1 + 3e-3,
                                       t2 - 3e-3, eps_abs);
        } catch (const Error&) {
            return;
        }
    }
    if (rc.count == 0) return;
    if (rc.count == 1 || depth <= 0) {
        cplx s(0.5 * (s1 + s2), 0.5 * (t1 + t2));
        if (newton_refine(f, s, eps_abs)) {
            if (s.real() >= s1 - 1e-6 && s.real() <= s2 + 1e-6 &&
                s.imag() >= t1 - 1e-6 && s.imag() <= t2 + 1e-6 &&
                std::abs(s.real() - f.sigma0()) > line_tol) {
                OfflineZero z;
                z.s = s;
                z.lambda_abs = std::abs(lambda_completed(f, s, eps_abs).value);
                out.push_back(z);
            }
        }
        return;
    }
    // Split the longer side; keep split lines off the critical line.
    if (s2 - s1 >= t2 - t1) {
        double m = 0.5 * (s1 + s2);
        if (std::abs(m - f.sigma0()) < 1e-3) m += 0.0171;
        subdivide(f, s1, m, t1, t2, depth - 1, out, line_tol, eps_abs);
        subdivide(f, m, s2, t1, t2, depth - 1, out, line_tol, eps_abs);
    } else {
        double m = 0.5 * (t1 + t2) + 0.00713;
        subdivide(f, s1, s2, t1, m, depth - 1, out, line_tol, eps_abs);
        subdivide(f, s1, s2, m, t2, depth - 1, out, line_tol, eps_abs);
    }
}

}  // namespace

std::vector<OfflineZero> find_offline_zeros(const HalfIntegralForm& f,
                                            double s1, double s2, double t1,
                                            double t2, double line_tol) {
    std::vector<OfflineZero> out;
    subdivide(f, s1, s2, t1, t2, 16, out, line_tol, 1e-10);
    // Deduplicate Newton targets reached from neighbouring cells.
    std::sort(out.begin(), out.end(), [](const OfflineZero& a,
                                         const OfflineZero& b) {
        return a.s.imag() != b.s.imag() ? a.s.imag() < b.s.imag()
                                        : a.s.real() < b.s.real();
    });
    std::vector<OfflineZero> uniq;
    for (const auto& z : out) {
        bool dup = false;
        for (const auto& u : uniq)
            if (std::abs(u.s - z.s) < 1e-5) dup = true;
        if (!dup) uniq.push_back(z);
    }
    return uniq;
}

GrowthReport n0_growth(const HalfIntegralForm& f,
                       const std::vector<double>& checkpoints,
                       double base_step) {
    GrowthReport gr;
    if (checkpoints.empty()) return gr;
    double tmax = *std::max_element(checkpoints.begin(), checkpoints.end());
    // Degeneracy probe: for Fricke-eigenvalue +1 forms i_f vanishes
    // identically and N0^- counts nothing.
    double imax = 0.0, rmax = 0.0;
    for (double t : {0.7, 1.9, 3.3, 6.1, 9.7}) {
        imax = std::max(imax, std::abs(i_f(f, t)));
        rmax = std::max(rmax, std::abs(r_f(f, t)));
    }
    gr.i_f_degenerate = imax < 1e-10 * (rmax + 1e-300);
    // Scan the envelope-normalized signature: r_f itself dies like
    // e^{-pi t / 2}, which would defeat the scanner's local-scale logic.
    auto rfunc = [&](double t) { return r_f(f, t) / critical_envelope(f, t); };
    ZeroScanReport rs = scan_sign_changes(rfunc, 1e-4, tmax, base_step);
    ZeroScanReport is;
    if (!gr.i_f_degenerate) {
        auto ifunc =
            [&](double t) { return i_f(f, t) / critical_envelope(f, t); };
        is = scan_sign_changes(ifunc, 1e-4, tmax, base_step);
    }
    for (double T : checkpoints) {
        GrowthPoint p;
        p.T = T;
        p.n_plus = std::count_if(rs.zeros.begin(), rs.zeros.end(),
                                 [&](double z) { return z <= T; });
        p.n_minus = std::count_if(is.zeros.begin(), is.zeros.end(),
                                  [&](double z) { return z <= T; });
        gr.points.push_back(p);
    }
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : gr.points) {
        sxx += p.T * p.T;
        sxy += p.T * static_cast<double>(p.n_plus);
    }
    if (sxx > 0.0) gr.fitted_slope_plus = sxy / sxx;
    return gr;
}

}  // namespace hil
