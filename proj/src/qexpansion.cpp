#include "hil/qexpansion.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace hil {

void QExpansion::normalize() {
    long n = start_;
    while (n < trunc_ && coeffs_[static_cast<size_t>(n - start_)] == 0) ++n;
    if (n > start_) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + (n - start_));
        start_ = n;
    }
}

bool QExpansion::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const bigint& c) { return c == 0; });
}

QExpansion rescale_width(const QExpansion& a, long new_width) {
    if (new_width % a.width() != 0)
        throw Error("rescale_width: new width not a multiple of old");
    long f = new_width / a.width();
    if (f == 1) return a;
    QExpansion r(new_width, a.start() * f, a.trunc() * f);
    for (long n = a.start(); n <= a.trunc(); ++n) r.set(n * f, a.at(n));
    return r;
}

QExpansion add(const QExpansion& a0, const QExpansion& b0) {
    long w = std::lcm(a0.width(), b0.width());
    QExpansion a = rescale_width(a0, w), b = rescale_width(b0, w);
    long start = std::min(a.start(), b.start());
    long trunc = std::min(a.trunc(), b.trunc());
    if (trunc < start) throw TruncationMismatch("add: empty overlap");
    QExpansion r(w, start, trunc);
    for (long n = start; n <= trunc; ++n) {
        bigint v = 0;
        if (n >= a.start()) v += a.at(n);
        if (n >= b.start()) v += b.at(n);
        r.set(n, std::move(v));
    }
    return r;
}

QExpansion mul(const QExpansion& a0, const QExpansion& b0) {
    long w = std::lcm(a0.width(), b0.width());
    QExpansion a = rescale_width(a0, w), b = rescale_width(b0, w);
    // Coefficients of the product are only known up to the point where the
    // unknown tails of either factor first interfere.
    long start = a.start() + b.start();
    long trunc = std::min(a.trunc() + b.start(), b.trunc() + a.start());
    QExpansion r(w, start, trunc);
    for (long i = a.start(); i <= a.trunc(); ++i) {
        if (a.at(i) == 0) continue;
        long jmax = std::min(b.trunc(), trunc - i);
        for (long j = b.start(); j <= jmax; ++j) {
            if (b.at(j) == 0) continue;
            r.set(i + j, r.at(i + j) + a.at(i) * b.at(j));
        }
    }
    return r;
}

QExpansion invert(const QExpansion& a0) {
    QExpansion a = a0;
    a.normalize();
    const bigint& lead = a.at(a.start());
    if (lead != 1 && lead != -1)
        throw NonUnitLeadingTerm("invert: leading coefficient must be +-1");
    long s = a.start();
    long len = a.trunc() - s;  // number of known terms beyond the leading one
    QExpansion r(a.width(), -s, -s + len);
    r.set(-s, lead);  // 1/lead == lead for lead = +-1
    // (sum a_{s+i} x^i)(sum r_{-s+j} x^j) = 1  =>  triangular solve.
    for (long j = 1; j <= len; ++j) {
        bigint acc = 0;
        for (long i = 1; i <= j; ++i) acc += a.at(s + i) * r.at(-s + j - i);
        r.set(-s + j, -lead * acc);
    }
    return r;
}

QExpansion divide(const QExpansion& a, const QExpansion& b0) {
    QExpansion b = b0;
    b.normalize();
    const bigint& lead = b.at(b.start());
    if (lead != 1 && lead != -1)
        throw NonUnitLeadingTerm("divide: leading coefficient must be +-1");
    long w = std::lcm(a.width(), b.width());
    QExpansion aw = rescale_width(a, w), bw = rescale_width(b, w);
    long s = bw.start();
    long rs = aw.start() - s;
    long rt = std::min(aw.trunc() - s, rs + (bw.trunc() - s));
    QExpansion r(w, rs, rt);
    for (long n = rs; n <= rt; ++n) {
        bigint acc = aw.at(n + s);
        for (long i = 1; i <= std::min(n - rs, bw.trunc() - s); ++i)
            acc -= bw.at(s + i) * r.at(n - i);
        r.set(n, lead * acc);  // divide by lead = +-1
    }
    return r;
}

QExpansion pow_qexp(const QExpansion& a, long e) {
    if (e < 0) return pow_qexp(invert(a), -e);
    // Truncation degrades when start > 0 and powers shift the window; handle
    // by straightforward repeated multiplication (exponents here are small).
    QExpansion r(a.width(), 0, a.trunc() - a.start());
    r.set(0, 1);
    for (long i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

QExpansion theta_expansion(long M) {
    if (M < 0) throw Error("theta_expansion: M must be >= 0");
    QExpansion r(1, 0, M);
    r.set(0, 1);
    for (long m = 1; m * m <= M; ++m) r.set(m * m, 2);
    return r;
}

QExpansion eta_product_expansion(long d, long e, long M) {
    if (d <= 0) throw Error("eta_product_expansion: d must be positive");
    if ((static_cast<long long>(d) * e) % 24 != 0)
        throw NonIntegralPrefactor(
            "eta_product_expansion: d*e/24 must be an integer");
    long shift = d * e / 24;
    if (M < shift) throw Error("eta_product_expansion: M below q-prefactor");
    // prod (1 - q^{dn}) via the pentagonal number theorem (sparse), then the
    // e-th power by repeated sparse multiplication, then the q^{de/24} shift.
    long L = M - shift;  // truncation for the product part
    std::vector<std::pair<long, long>> sparse;  // (exponent, +-1)
    sparse.emplace_back(0, 1);
    for (long k = 1;; ++k) {
        long p1 = k * (3 * k - 1) / 2, p2 = k * (3 * k + 1) / 2;
        if (d * p1 > L && d * p2 > L) break;
        long sgn = (k % 2 == 0) ? 1 : -1;
        if (d * p1 <= L) sparse.emplace_back(d * p1, sgn);
        if (d * p2 <= L) sparse.emplace_back(d * p2, sgn);
    }
    std::vector<bigint> acc(static_cast<size_t>(L + 1), bigint(0));
    acc[0] = 1;
    long ecount = e >= 0 ? e : -e;
    for (long rep = 0; rep < ecount; ++rep) {
        std::vector<bigint> nxt(static_cast<size_t>(L + 1), bigint(0));
        for (auto [p, sgn] : sparse)
            for (long n = 0; n + p <= L; ++n)
                if (acc[n] != 0) {
                    if (sgn > 0)
                        nxt[n + p] += acc[n];
                    else
                        nxt[n + p] -= acc[n];
                }
        acc.swap(nxt);
    }
    QExpansion prod(1, 0, L);
    for (long n = 0; n <= L; ++n) prod.set(n, acc[static_cast<size_t>(n)]);
    if (e < 0) prod = invert(prod);
    QExpansion r(1, shift + prod.start(), shift + prod.trunc());
    for (long n = prod.start(); n <= prod.trunc(); ++n)
        r.set(n + shift, prod.at(n));
    return r;
}

QExpansion g_form_coeffs(long M) {
    if (M < 1) throw Error("g_form_coeffs: M must be >= 1");
    QExpansion th = theta_expansion(M);
    QExpansion th3 = mul(mul(th, th), th);
    QExpansion e12 = eta_product_expansion(2, 12, M);
    // g = eta(2z)^12 / theta^3 by exact forward substitution; coefficients of
    // g are polynomially bounded, so this stays fast even though theta^{-3}
    // alone has exponentially large coefficients.
    return divide(e12, th3);
}

std::vector<std::int64_t> g_form_coeffs_i64(long M) {
    if (M < 1) throw Error("g_form_coeffs_i64: M must be >= 1");
    const long L = M;
    // eta(2z)^12 = q * prod(1-q^{2n})^12: sparse pentagonal factors, 12 passes.
    std::vector<std::pair<long, int>> sparse;
    sparse.emplace_back(0, 1);
    for (long k = 1;; ++k) {
        long p1 = k * (3 * k - 1), p2 = k * (3 * k + 1);  // 2 * pentagonal
        if (p1 > L && p2 > L) break;
        int sgn = (k % 2 == 0) ? 1 : -1;
        if (p1 <= L) sparse.emplace_back(p1, sgn);
        if (p2 <= L) sparse.emplace_back(p2, sgn);
    }
    std::vector<std::int64_t> e(static_cast<size_t>(L + 1), 0);
    e[1] = 1;
    for (int rep = 0; rep < 12; ++rep) {
        std::vector<std::int64_t> nxt(static_cast<size_t>(L + 1), 0);
        for (auto [p, sgn] : sparse)
            for (long n = 0; n + p <= L; ++n)
                if (e[n] != 0) nxt[n + p] += sgn * e[n];
        e.swap(nxt);
    }
    // r3(n) = #{(a,b,c) in Z^3 : a^2+b^2+c^2 = n} via theta^2 * theta.
    std::vector<std::int64_t> r2(static_cast<size_t>(L + 1), 0);
    for (long a = 0; a * a <= L; ++a) {
        std::int64_t wa = (a == 0) ? 1 : 2;
        for (long b = 0; a * a + b * b <= L; ++b)
            r2[a * a + b * b] += wa * ((b == 0) ? 1 : 2);
    }
    std::vector<std::int64_t> r3(static_cast<size_t>(L + 1), 0);
    for (long c = 0; c * c <= L; ++c) {
        std::int64_t wc = (c == 0) ? 1 : 2;
        for (long n = 0; n + c * c <= L; ++n)
            if (r2[n] != 0) r3[n + c * c] += wc * r2[n];
    }
    // g * theta^3 = eta(2z)^12: forward substitution with overflow checks.
    std::vector<std::int64_t> g(static_cast<size_t>(L + 1), 0);
    const __int128 lim = static_cast<__int128>(1) << 126;
    for (long n = 1; n <= L; ++n) {
        __int128 acc = e[n];
        const std::int64_t* gp = g.data();
        const std::int64_t* rp = r3.data();
        for (long j = 1; j < n; ++j) {
            acc -= static_cast<__int128>(rp[j]) * gp[n - j];
            if (acc > lim || acc < -lim)
                throw Error("g_form_coeffs_i64: accumulator overflow");
        }
        if (acc > std::numeric_limits<std::int64_t>::max() ||
            acc < std::numeric_limits<std::int64_t>::min())
            throw Error("g_form_coeffs_i64: coefficient overflow");
        g[static_cast<size_t>(n)] = static_cast<std::int64_t>(acc);
    }
    return g;  // g[n] = a_g(n), g[0] = 0
}

}  // namespace hil
