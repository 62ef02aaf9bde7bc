#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "hil/errors.hpp"

namespace hil {

using cplx = std::complex<double>;

// Fourier coefficients a_f(n), n >= 1, possibly extendable on demand.
class CoeffSource {
public:
    virtual ~CoeffSource() = default;
    virtual double coeff(long n) const = 0;
    virtual long available() const = 0;
    virtual bool ensure(long M) = 0;  // extend to >= M if possible
};

class VectorSource final : public CoeffSource {
public:
    explicit VectorSource(std::vector<double> a) : a_(std::move(a)) {}
    double coeff(long n) const override {
        if (n < 1 || n > available())
            throw InsufficientCoefficients("VectorSource: n out of range");
        return a_[static_cast<size_t>(n - 1)];
    }
    long available() const override { return static_cast<long>(a_.size()); }
    bool ensure(long M) override { return M <= available(); }

private:
    std::vector<double> a_;  // a(1), a(2), ...
};

// a_{f|W}(n) = scale * a_f(n) for Fricke eigenforms.
class ScaledSource final : public CoeffSource {
public:
    ScaledSource(std::shared_ptr<CoeffSource> base, double scale)
        : base_(std::move(base)), scale_(scale) {}
    double coeff(long n) const override { return scale_ * base_->coeff(n); }
    long available() const override { return base_->available(); }
    bool ensure(long M) override { return base_->ensure(M); }

private:
    std::shared_ptr<CoeffSource> base_;
    double scale_;
};

// Exact coefficients of Yoshida's g = theta^{-3} eta(2z)^12, grown lazily
// (amortized doubling) and optionally cached on disk via HIL_CACHE_DIR.
class YoshidaSource final : public CoeffSource {
public:
    explicit YoshidaSource(long initial = 2048);
    double coeff(long n) const override;
    long available() const override;
    bool ensure(long M) override;
    static constexpr long kMaxM = 1L << 17;

private:
    void grow(long M);
    std::vector<double> a_;  // a_(n-1) = a_g(n)
};

struct HalfIntegralForm {
    enum class CoeffClass { Real, PurelyImaginary };

    std::string name;
    int k = 0;        // weight is k + 1/2
    long level = 4;   // 4N
    CoeffClass coeff_class = CoeffClass::Real;
    std::shared_ptr<CoeffSource> coeffs;         // a_f(n)
    std::shared_ptr<CoeffSource> fricke_coeffs;  // a_{f|W_{4N}}(n)
    double growth_C = 1.0;    // |a(n)| <= C n^{growth_exp}
    double growth_exp = 0.0;  // defaults to k/2 + 1/4

    double kappa() const { return k + 0.5; }          // weight
    double sigma0() const { return k / 2.0 + 0.25; }  // critical line
    long N() const { return level / 4; }
    double sqrt_level() const;
};

// The built-in example: weight 9/2 on Gamma_0(4), Fricke eigenvalue +1.
HalfIntegralForm yoshida_g(long initial_coeffs = 2048);

// Registry: JSON document {"forms":[{...}]} with either "builtin" or explicit
// coefficient arrays.  Throws RegistryError on malformed entries.
HalfIntegralForm form_from_registry(const std::string& json_text,
                                    const std::string& name);
HalfIntegralForm load_form(const std::string& registry_path,
                           const std::string& name);
std::vector<std::string> registry_names(const std::string& json_text);
std::string builtin_registry_json();

struct EvalResult {
    cplx value;
    double abs_err = 0.0;
    long terms_used = 0;
};

// f(z) = sum_{n>=1} a(n) e^{2 pi i n z}; truncation driven by the growth
// bound.  Throws NonPositiveImaginaryPart if Im z <= 0.
EvalResult evaluate_form(const HalfIntegralForm& f, cplx z,
                         double eps_abs = 1e-12, bool partner = false);

// F(z) = f(z / sqrt(level)) (partner=false) or (f|W)(z / sqrt(level)).
// When |z| < 1 the evaluation is routed through the Fricke involution so the
// effective q-parameter stays small.
EvalResult evaluate_scaled(const HalfIntegralForm& f, cplx z,
                           double eps_abs = 1e-12, bool partner = false,
                           bool allow_flip = true);

struct UniformBoundReport {
    double sup_scaled = 0.0;  // sup |f(z/sqrt(4N))| Im(z)^{k/2+1/4}
    bool bounded = true;      // no blow-up against the uniform bound
    double worst_im = 0.0;
};
UniformBoundReport uniform_bound_check(const HalfIntegralForm& f,
                                       double im_lo, double im_hi,
                                       int grid = 64);

struct CoeffStats {
    long M = 0;
    double max_abs = 0.0;
    double max_ratio = 0.0;       // max |a(n)| / n^{growth_exp}
    double fitted_exponent = 0.0; // slope of log|a(n)| against log n
    double fitted_C = 0.0;
};
CoeffStats coefficient_stats(const HalfIntegralForm& f, long M);

struct WiltonReport {
    cplx defect;        // sum_{m<=M} a(m) e^{2 pi i m z / sqrt(4N)} - delta f
    double bound = 0.0; // e^{-2 pi Im(z)(M+1)/sqrt(4N)} M^{k/2+1/4} log M
    double ratio = 0.0;
    double noise = 0.0; // rounding floor of the computed defect
    // False when the bound sits below the rounding floor (large Im z): the
    // true defect is then invisible in doubles and ratio is meaningless.
    bool resolvable = true;
    int delta = 0;      // 1 iff Im z > sqrt(N) / (pi M)
};
WiltonReport wilton_defect(const HalfIntegralForm& f, cplx z, long M);

struct SmoothedForm {
    HalfIntegralForm form;
    long c = 1;  // first retained index is c+1; weight 1/log(n/c)
};

// f_1(z) = sum_{n>c} a(n) / log(n/c) e^{2 pi i n z / sqrt(4N)}.
EvalResult smoothed_form_eval(const SmoothedForm& sf, cplx z,
                              double eps_rel = 1e-9);

}  // namespace hil
