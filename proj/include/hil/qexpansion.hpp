#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "hil/errors.hpp"

namespace hil {

using bigint = boost::multiprecision::cpp_int;

// Truncated expansion  sum_{n=start}^{trunc} c_n q^{n/width},  q = e^{2 pi i z}.
// Indices are integers in the variable q^{1/width}; coefficients are exact.
// Coefficients above `trunc` are unknown (not zero); reading them throws.
class QExpansion {
public:
    QExpansion() = default;
    QExpansion(long width, long start, long trunc)
        : width_(width), start_(start), trunc_(trunc) {
        if (width <= 0) throw Error("QExpansion: width must be positive");
        if (trunc < start) throw Error("QExpansion: trunc < start");
        coeffs_.assign(static_cast<size_t>(trunc - start + 1), bigint(0));
    }

    long width() const { return width_; }
    long start() const { return start_; }
    long trunc() const { return trunc_; }

    // Coefficient of q^{n/width}; zero below start, unknown above trunc.
    const bigint& at(long n) const {
        static const bigint zero(0);
        if (n < start_) return zero;
        if (n > trunc_)
            throw TruncationMismatch("QExpansion::at: index beyond truncation");
        return coeffs_[static_cast<size_t>(n - start_)];
    }
    void set(long n, bigint v) {
        if (n < start_ || n > trunc_)
            throw TruncationMismatch("QExpansion::set: index out of range");
        coeffs_[static_cast<size_t>(n - start_)] = std::move(v);
    }

    // Drop leading zero coefficients so that start points at the first
    // nonzero term (or trunc if the series is identically zero so far).
    void normalize();

    bool is_zero() const;

private:
    long width_ = 1;
    long start_ = 0;
    long trunc_ = 0;
    std::vector<bigint> coeffs_;
};

// Re-index into a finer uniformizer q^{1/new_width}; new_width must be a
// multiple of the current width.
QExpansion rescale_width(const QExpansion& a, long new_width);

QExpansion add(const QExpansion& a, const QExpansion& b);
QExpansion mul(const QExpansion& a, const QExpansion& b);
// Multiplicative inverse; requires leading coefficient +-1 (exactness).
QExpansion invert(const QExpansion& a);
// a / b by forward substitution; requires leading coefficient of b = +-1.
QExpansion divide(const QExpansion& a, const QExpansion& b);
// Integer power, negative exponents via invert.
QExpansion pow_qexp(const QExpansion& a, long e);

// theta(z) = sum_{m in Z} q^{m^2} truncated at q^M (width 1).
QExpansion theta_expansion(long M);

// eta(d z)^e = q^{d e/24} prod_{n>=1} (1 - q^{d n})^e, truncated at q^M.
// Throws NonIntegralPrefactor unless 24 | d*e.
QExpansion eta_product_expansion(long d, long e, long M);

// Coefficients a_g(n), n = start..M, of g = theta^{-3} eta(2z)^12, exact.
QExpansion g_form_coeffs(long M);

// Fast integer path for large M (same values; overflow-checked).
std::vector<std::int64_t> g_form_coeffs_i64(long M);

}  // namespace hil
