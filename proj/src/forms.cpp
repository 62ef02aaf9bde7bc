#include "hil/forms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "hil/qexpansion.hpp"

namespace hil {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

std::string cache_path_for(long M) {
    const char* dir = std::getenv("HIL_CACHE_DIR");
    if (!dir || !*dir) return {};
    return std::string(dir) + "/yoshida_g_" + std::to_string(M) + ".i64";
}

// Smallest M with  C x^{M+1} (M+1)^a / (1-x) * (1 + a/((M+1) |ln x|)) < eps,
// x = e^{-2 pi y}: geometric tail of the coefficient growth bound.
long choose_truncation(double C, double a, double y, double eps, long cap) {
    if (!(y > 0.0))
        throw NonPositiveImaginaryPart("evaluate: Im z must be positive");
    double lx = kTwoPi * y;
    double x = std::exp(-lx);
    long M = 4;
    while (M < cap) {
        double Mp = static_cast<double>(M + 1);
        double bound = C * std::exp(-lx * Mp + a * std::log(Mp)) / (1.0 - x) *
                       (1.0 + std::max(a, 0.0) / (Mp * lx));
        if (bound < eps) return M;
        M = (M < 64) ? M + 4 : M + M / 8 + 1;
    }
    return cap;
}

double tail_bound(double C, double a, double y, long M) {
    double lx = kTwoPi * y;
    double x = std::exp(-lx);
    double Mp = static_cast<double>(M + 1);
    return C * std::exp(-lx * Mp + a * std::log(Mp)) / (1.0 - x) *
           (1.0 + std::max(a, 0.0) / (Mp * lx));
}
}  // namespace

double HalfIntegralForm::sqrt_level() const {
    return std::sqrt(static_cast<double>(level));
}

YoshidaSource::YoshidaSource(long initial) { grow(std::max(initial, 64L)); }

double YoshidaSource::coeff(long n) const {
    if (n < 1 || n > available())
        throw InsufficientCoefficients("YoshidaSource: n out of range");
    return a_[static_cast<size_t>(n - 1)];
}

long YoshidaSource::available() const { return static_cast<long>(a_.size()); }

bool YoshidaSource::ensure(long M) {
    if (M <= available()) return true;
    if (M > kMaxM) return false;
    long target = available();
    while (target < M) target *= 2;
    grow(std::min(target, kMaxM));
    return M <= available();
}

void YoshidaSource::grow(long M) {
    std::string path = cache_path_for(M);
    if (!path.empty()) {
        std::ifstream in(path, std::ios::binary);
        if (in) {
            std::vector<std::int64_t> buf(static_cast<size_t>(M));
            in.read(reinterpret_cast<char*>(buf.data()),
                    static_cast<std::streamsize>(M * sizeof(std::int64_t)));
            if (in.gcount() ==
                static_cast<std::streamsize>(M * sizeof(std::int64_t))) {
                a_.assign(buf.begin(), buf.end());
                return;
            }
        }
    }
    std::vector<std::int64_t> g = g_form_coeffs_i64(M);
    a_.resize(static_cast<size_t>(M));
    for (long n = 1; n <= M; ++n)
        a_[static_cast<size_t>(n - 1)] =
            static_cast<double>(g[static_cast<size_t>(n)]);
    if (!path.empty()) {
        std::ofstream out(path, std::ios::binary);
        if (out)
            out.write(reinterpret_cast<const char*>(&g[1]),
                      static_cast<std::streamsize>(M * sizeof(std::int64_t)));
    }
}

HalfIntegralForm yoshida_g(long initial_coeffs) {
    HalfIntegralForm f;
    f.name = "yoshida_g";
    f.k = 4;
    f.level = 4;
    f.coeff_class = HalfIntegralForm::CoeffClass::Real;
    auto src = std::make_shared<YoshidaSource>(initial_coeffs);
    f.coeffs = src;
    f.fricke_coeffs = src;  // g | W_4 = g
    f.growth_exp = f.k / 2.0 + 0.25;
    double maxr = 0.0;
    for (long n = 1; n <= std::min<long>(src->available(), 1000); ++n)
        maxr = std::max(maxr, std::abs(src->coeff(n)) /
                                  std::pow(static_cast<double>(n), f.growth_exp));
    f.growth_C = 2.0 * maxr;
    return f;
}

std::string builtin_registry_json() {
    return R"({"forms":[{"name":"yoshida_g","builtin":"yoshida_g","k":4,)"
           R"("level":4,"coeff_class":"real","fricke_eigenvalue":1}]})";
}

std::vector<std::string> registry_names(const std::string& json_text) {
    auto doc = nlohmann::json::parse(json_text);
    std::vector<std::string> out;
    for (const auto& e : doc.at("forms")) out.push_back(e.at("name"));
    return out;
}

HalfIntegralForm form_from_registry(const std::string& json_text,
                                    const std::string& name) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw RegistryError(std::string("registry parse error: ") + e.what());
    }
    if (!doc.contains("forms")) throw RegistryError("registry: missing 'forms'");
    for (const auto& e : doc["forms"]) {
        if (e.value("name", "") != name) continue;
        if (e.value("builtin", "") == "yoshida_g") return yoshida_g();
        HalfIntegralForm f;
        f.name = name;
        if (!e.contains("k") || !e.contains("level") || !e.contains("coeffs"))
            throw RegistryError("registry: form needs k, level, coeffs");
        f.k = e["k"].get<int>();
        f.level = e["level"].get<long>();
        if (f.level % 4 != 0) throw RegistryError("registry: level must be 4N");
        std::string cls = e.value("coeff_class", "real");
        f.coeff_class = (cls == "imaginary")
                            ? HalfIntegralForm::CoeffClass::PurelyImaginary
                            : HalfIntegralForm::CoeffClass::Real;
        auto base = std::make_shared<VectorSource>(
            e["coeffs"].get<std::vector<double>>());
        f.coeffs = base;
        if (e.contains("fricke_coeffs"))
            f.fricke_coeffs = std::make_shared<VectorSource>(
                e["fricke_coeffs"].get<std::vector<double>>());
        else if (e.contains("fricke_eigenvalue")) {
            double eig = e["fricke_eigenvalue"].get<double>();
            f.fricke_coeffs =
                (eig == 1.0) ? base
                             : std::static_pointer_cast<CoeffSource>(
                                   std::make_shared<ScaledSource>(base, eig));
        } else
            throw RegistryError(
                "registry: need fricke_coeffs or fricke_eigenvalue");
        f.growth_exp = e.value("growth_exp", f.k / 2.0 + 0.25);
        double maxr = 0.0;
        for (long n = 1; n <= base->available(); ++n)
            maxr = std::max(maxr,
                            std::abs(base->coeff(n)) /
                                std::pow(static_cast<double>(n), f.growth_exp));
        f.growth_C = e.value("growth_C", 2.0 * maxr);
        return f;
    }
    throw RegistryError("registry: no form named '" + name + "'");
}

HalfIntegralForm load_form(const std::string& registry_path,
                           const std::string& name) {
    std::ifstream in(registry_path);
    if (!in) throw RegistryError("registry: cannot open " + registry_path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return form_from_registry(text, name);
}

EvalResult evaluate_form(const HalfIntegralForm& f, cplx z, double eps_abs,
                         bool partner) {
    const CoeffSource& src = partner ? *f.fricke_coeffs : *f.coeffs;
    double y = z.imag();
    auto& mut = const_cast<CoeffSource&>(src);
    long cap = 4 * YoshidaSource::kMaxM;
    long M = choose_truncation(f.growth_C, f.growth_exp, y, eps_abs, cap);
    if (!mut.ensure(M)) {
        M = mut.available();
        if (tail_bound(f.growth_C, f.growth_exp, y, M) > 1e3 * eps_abs)
            throw InsufficientCoefficients(
                "evaluate_form: cannot reach requested accuracy");
    }
    cplx w = std::exp(cplx(0.0, kTwoPi) * z);
    cplx wn = 1.0;
    cplx sum = 0.0;
    double sumabs = 0.0;
    for (long n = 1; n <= M; ++n) {
        if ((n & 1023) == 0)  // refresh the phase to stop drift on long sums
            wn = std::exp(cplx(0.0, kTwoPi) * (static_cast<double>(n - 1) * z));
        wn *= w;
        double a = src.coeff(n);
        if (a != 0.0) {
            sum += a * wn;
            sumabs += std::abs(a) * std::abs(wn);
        }
    }
    EvalResult out;
    out.value = sum;
    out.terms_used = M;
    out.abs_err = tail_bound(f.growth_C, f.growth_exp, y, M) + sumabs * 1e-15;
    return out;
}

EvalResult evaluate_scaled(const HalfIntegralForm& f, cplx z, double eps_abs,
                           bool partner, bool allow_flip) {
    if (!(z.imag() > 0.0))
        throw NonPositiveImaginaryPart("evaluate_scaled: Im z must be > 0");
    double kap = f.kappa();
    if (allow_flip && std::abs(z) < 0.95) {
        // F(z) = i^kappa z^{-kappa} G(-1/z) with G = partner of F; both
        // directions follow from the Fricke involution (1.5').
        cplx zh = -1.0 / z;
        cplx fac = std::exp(cplx(0.0, kPi / 2.0) * kap - kap * std::log(z));
        EvalResult inner = evaluate_scaled(f, zh, eps_abs / std::abs(fac),
                                           !partner, false);
        inner.value *= fac;
        inner.abs_err *= std::abs(fac);
        return inner;
    }
    return evaluate_form(f, z / f.sqrt_level(), eps_abs, partner);
}

UniformBoundReport uniform_bound_check(const HalfIntegralForm& f, double im_lo,
                                       double im_hi, int grid) {
    UniformBoundReport rep;
    double a = f.kappa() / 2.0;
    std::vector<double> vals;
    std::vector<double> ys;
    for (int i = 0; i < grid; ++i) {
        double y = im_lo * std::pow(im_hi / im_lo,
                                    static_cast<double>(i) / (grid - 1));
        double worst = 0.0;
        for (double xfrac : {0.0, 0.21, 0.37, 0.5}) {
            cplx z(xfrac * f.sqrt_level(), y);
            EvalResult e = evaluate_scaled(f, z, 1e-10 * std::pow(y, -a));
            worst = std::max(worst, std::abs(e.value));
        }
        double scaled = worst * std::pow(y, a);
        if (scaled > rep.sup_scaled) {
            rep.sup_scaled = scaled;
            rep.worst_im = y;
        }
        vals.push_back(scaled);
        ys.push_back(y);
    }
    // Bounded means the scaled values do not blow up as Im z -> 0: compare
    // the small-Im half against the rest.
    double lo_max = 0.0, hi_max = 0.0;
    for (size_t i = 0; i < vals.size(); ++i)
        (i < vals.size() / 2 ? lo_max : hi_max) =
            std::max(i < vals.size() / 2 ? lo_max : hi_max, vals[i]);
    rep.bounded = lo_max <= 5.0 * hi_max + 1e-12;
    return rep;
}

CoeffStats coefficient_stats(const HalfIntegralForm& f, long M) {
    auto& src = *f.coeffs;
    const_cast<CoeffSource&>(src).ensure(M);
    M = std::min(M, src.available());
    CoeffStats st;
    st.M = M;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long cnt = 0;
    for (long n = 1; n <= M; ++n) {
        double a = std::abs(src.coeff(n));
        st.max_abs = std::max(st.max_abs, a);
        st.max_ratio = std::max(
            st.max_ratio, a / std::pow(static_cast<double>(n), f.growth_exp));
        if (a > 0.0 && n >= 8) {
            double lx = std::log(static_cast<double>(n)), ly = std::log(a);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++cnt;
        }
    }
    if (cnt >= 2) {
        st.fitted_exponent = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
        st.fitted_C = std::exp((sy - st.fitted_exponent * sx) / cnt);
    }
    return st;
}

WiltonReport wilton_defect(const HalfIntegralForm& f, cplx z, long M) {
    if (!(z.imag() > 0.0))
        throw NonPositiveImaginaryPart("wilton_defect: Im z must be > 0");
    const_cast<CoeffSource&>(*f.coeffs).ensure(M);
    cplx zs = z / f.sqrt_level();
    cplx w = std::exp(cplx(0.0, kTwoPi) * zs);
    cplx wn = 1.0, partial = 0.0;
    double magsum = 0.0;
    for (long m = 1; m <= M; ++m) {
        wn *= w;
        partial += f.coeffs->coeff(m) * wn;
        magsum += std::abs(f.coeffs->coeff(m)) * std::abs(wn);
    }
    WiltonReport rep;
    double thr = std::sqrt(static_cast<double>(f.N())) / (kPi * M);
    rep.delta = z.imag() > thr ? 1 : 0;
    cplx fv = 0.0;
    if (rep.delta) fv = evaluate_scaled(f, z, 1e-13).value;
    rep.defect = partial - static_cast<double>(rep.delta) * fv;
    rep.bound = std::exp(-kTwoPi * z.imag() * (M + 1) / f.sqrt_level()) *
                std::pow(static_cast<double>(M), f.k / 2.0 + 0.25) *
                std::log(std::max(static_cast<double>(M), 2.0));
    rep.noise = 1e-15 * (magsum + std::abs(fv));
    rep.resolvable = rep.bound > 10.0 * rep.noise;
    rep.ratio = std::abs(rep.defect) / rep.bound;
    return rep;
}

EvalResult smoothed_form_eval(const SmoothedForm& sf, cplx z, double eps_rel) {
    const HalfIntegralForm& f = sf.form;
    if (!(z.imag() > 0.0))
        throw NonPositiveImaginaryPart("smoothed_form_eval: Im z must be > 0");
    long c = sf.c;
    double y = z.imag() / f.sqrt_level();
    cplx w = std::exp(cplx(0.0, kTwoPi) * (z / f.sqrt_level()));
    auto& src = const_cast<CoeffSource&>(*f.coeffs);
    long M = std::max<long>(4 * c + 16, 64);
    cplx sum = 0.0;
    double sumabs = 0.0;
    long n_done = c;
    cplx wn = std::pow(w, static_cast<double>(c));
    EvalResult out;
    for (;;) {
        bool capped = !src.ensure(M);
        if (capped) M = src.available();
        for (long n = n_done + 1; n <= M; ++n) {
            wn *= w;
            if ((n & 1023) == 0)
                wn = std::exp(cplx(0.0, kTwoPi) * (static_cast<double>(n) * z /
                                                   f.sqrt_level()));
            double a = src.coeff(n);
            if (a == 0.0) continue;
            double term = a / std::log(static_cast<double>(n) / c);
            sum += term * wn;
            sumabs += std::abs(term) * std::abs(wn);
        }
        n_done = M;
        // Tail: weights 1/log(n/c) <= 1/log((M+1)/c) beyond the truncation.
        double tb = tail_bound(
            f.growth_C / std::log(static_cast<double>(M + 1) / c),
            f.growth_exp, y, M);
        double scale = std::max(std::abs(sum), sumabs * 1e-6) + 1e-300;
        if (tb <= eps_rel * scale || capped) {
            out.abs_err = tb + sumabs * 1e-15;
            if (tb > 1e3 * eps_rel * scale)
                throw InsufficientCoefficients(
                    "smoothed_form_eval: cannot reach requested accuracy");
            break;
        }
        M *= 2;
    }
    out.value = sum;
    out.terms_used = n_done;
    return out;
}

}  // namespace hil
