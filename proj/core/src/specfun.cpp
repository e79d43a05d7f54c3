#include "bandedge/specfun.hpp"

#include <cmath>
#include <limits>

namespace bandedge {

namespace {

// ---------------------------------------------------------------------------
// Double-double arithmetic (error-free transformations). Each value is an
// unevaluated sum hi + lo with |lo| <= ulp(hi)/2, giving ~32 significant
// digits. Used only by the erfcx power series, where the two internal series
// cancel against each other by up to e^{|z|^2} and plain doubles would lose
// the result entirely near |z| ~ 6.
// ---------------------------------------------------------------------------

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD x, DD y) {
    DD s = two_sum(x.hi, y.hi);
    s.lo += x.lo + y.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD x) { return {-x.hi, -x.lo}; }

inline DD dd_sub(DD x, DD y) { return dd_add(x, dd_neg(y)); }

inline DD dd_mul(DD x, DD y) {
    DD p = two_prod(x.hi, y.hi);
    p.lo += x.hi * y.lo + x.lo * y.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div_d(DD x, double d) {
    const double q1 = x.hi / d;
    const DD p = two_prod(q1, d);
    const double q2 = (((x.hi - p.hi) - p.lo) + x.lo) / d;
    return quick_two_sum(q1, q2);
}

// Complex value with double-double components.
struct CDD {
    DD re, im;
};

inline CDD cdd_add(CDD x, CDD y) { return {dd_add(x.re, y.re), dd_add(x.im, y.im)}; }

inline CDD cdd_sub(CDD x, CDD y) { return {dd_sub(x.re, y.re), dd_sub(x.im, y.im)}; }

inline CDD cdd_mul(CDD x, CDD y) {
    return {dd_sub(dd_mul(x.re, y.re), dd_mul(x.im, y.im)),
            dd_add(dd_mul(x.re, y.im), dd_mul(x.im, y.re))};
}

inline CDD cdd_div_d(CDD x, double d) { return {dd_div_d(x.re, d), dd_div_d(x.im, d)}; }

// z^2 as an exact CDD from a double complex z.
inline CDD cdd_square(std::complex<double> z) {
    const double a = z.real();
    const double b = z.imag();
    const DD aa = two_prod(a, a);
    const DD bb = two_prod(b, b);
    DD ab = two_prod(a, b);
    ab = dd_add(ab, ab);
    return {dd_sub(aa, bb), ab};
}

constexpr double SQRT_PI = 1.7724538509055160273;
// 2/sqrt(pi) split to double-double precision.
constexpr double TWO_OVER_SQRT_PI_HI = 1.1283791670955126;
constexpr double TWO_OVER_SQRT_PI_LO = 1.533545961316588e-17;

// Lentz-evaluated continued fraction, partial numerators j/2. Converges for
// Re(z) > 0 (Stieltjes fraction; its cut is the imaginary axis) and is used
// in the sector |Re z| >= 0.1 |Im z| where at most a few hundred iterations
// are ever needed.
std::complex<double> erfcx_cf(std::complex<double> z) {
    constexpr double tiny = 1e-300;
    constexpr int max_iter = 1000;
    std::complex<double> f = (z == std::complex<double>(0.0, 0.0))
                                 ? std::complex<double>(tiny, 0.0)
                                 : z;
    std::complex<double> c = f;
    std::complex<double> d = 0.0;
    for (int j = 1; j <= max_iter; ++j) {
        const double a = 0.5 * j;
        d = z + a * d;
        if (d == std::complex<double>(0.0, 0.0)) d = tiny;
        c = z + a / c;
        if (c == std::complex<double>(0.0, 0.0)) c = tiny;
        d = 1.0 / d;
        const std::complex<double> delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return 1.0 / (SQRT_PI * f);
}

// Optimally truncated asymptotic series; remainder ~ e^{-|z|^2} which is
// below 5e-15 relative for |z| >= 6, the only region where this is used.
std::complex<double> erfcx_asym_series(std::complex<double> z) {
    const std::complex<double> u = 1.0 / (2.0 * z * z);
    std::complex<double> term = 1.0;
    std::complex<double> sum = 1.0;
    double prev_mag = 1.0;
    for (int k = 0; k < 64; ++k) {
        term *= -static_cast<double>(2 * k + 1) * u;
        const double mag = std::abs(term);
        if (mag >= prev_mag) break;  // divergent tail reached
        sum += term;
        if (mag < 1e-17 * std::abs(sum)) break;
        prev_mag = mag;
    }
    return sum / (SQRT_PI * z);
}

// Dispatch for Re(z) >= 0, Im(z) >= 0 per the region map in the header.
std::complex<double> erfcx_nonneg(std::complex<double> z) {
    const double r2 = std::norm(z);
    if (r2 < 16.0) return detail::erfcx_series(z);
    if (z.real() >= 0.1 * z.imag()) return erfcx_cf(z);
    if (r2 < 36.0) return detail::erfcx_series(z);
    return erfcx_asym_series(z);
}

inline std::complex<double> conj_c(std::complex<double> z) {
    return std::complex<double>(z.real(), -z.imag());
}

}  // namespace

namespace detail {

std::complex<double> erfcx_series(std::complex<double> z) {
    const CDD q = cdd_square(z);
    const CDD one{{1.0, 0.0}, {0.0, 0.0}};
    CDD term_e = one, sum_e = one;
    CDD term_m = one, sum_m = one;
    for (int k = 0; k < 300; ++k) {
        term_e = cdd_div_d(cdd_mul(term_e, q), k + 1.0);
        sum_e = cdd_add(sum_e, term_e);
        term_m = cdd_div_d(cdd_mul(term_m, q), k + 1.5);
        sum_m = cdd_add(sum_m, term_m);
        const double tmag = std::max(std::max(std::abs(term_e.re.hi), std::abs(term_e.im.hi)),
                                     std::max(std::abs(term_m.re.hi), std::abs(term_m.im.hi)));
        const double smag = 1.0 + std::abs(sum_m.re.hi) + std::abs(sum_m.im.hi);
        if (tmag < 1e-38 * smag) break;
    }
    const CDD zc{{z.real(), 0.0}, {z.imag(), 0.0}};
    const CDD c2{{TWO_OVER_SQRT_PI_HI, TWO_OVER_SQRT_PI_LO}, {0.0, 0.0}};
    const CDD res = cdd_sub(sum_e, cdd_mul(cdd_mul(zc, c2), sum_m));
    return {res.re.hi + res.re.lo, res.im.hi + res.im.lo};
}

std::complex<double> erfcx_asymptotic(std::complex<double> z) {
    if (std::abs(z.real()) >= 0.1 * std::abs(z.imag())) return erfcx_cf(z);
    return erfcx_asym_series(z);
}

}  // namespace detail

BranchedSqrt principal_sqrt(std::complex<double> z) {
    if (z.imag() == 0.0) z = std::complex<double>(z.real(), +0.0);  // drop -0 imag
    BranchedSqrt out;
    out.value = std::sqrt(z);
    out.phase_of_square = std::atan2(z.imag(), z.real());
    return out;
}

ErfcxResult erfcx_checked(std::complex<double> z) {
    if (z.imag() < 0.0) {
        ErfcxResult r = erfcx_checked(conj_c(z));
        r.value = conj_c(r.value);
        return r;
    }
    if (z.real() < 0.0) {
        // erfcx(z) = 2 e^{z^2} - erfcx(-z); the subtracted term re-enters with
        // Re >= 0 (and Im <= 0, handled by the conjugation branch above).
        const std::complex<double> w = z * z;
        const ErfcxResult mirrored = erfcx_checked(-z);
        std::complex<double> doubled;
        if (w.imag() == 0.0) {
            // Real axis: keep 2 e^{w} in real arithmetic so an overflow gives
            // a clean +inf instead of inf*0 artifacts.
            doubled = {2.0 * std::exp(w.real()), 0.0};
        } else {
            const double scale = 2.0 * std::exp(w.real());
            doubled = {scale * std::cos(w.imag()), scale * std::sin(w.imag())};
        }
        ErfcxResult r;
        r.value = doubled - mirrored.value;
        r.overflow = !(std::isfinite(r.value.real()) && std::isfinite(r.value.imag()));
        return r;
    }
    return {erfcx_nonneg(z), false};
}

std::complex<double> erfcx(std::complex<double> z) { return erfcx_checked(z).value; }

}  // namespace bandedge
