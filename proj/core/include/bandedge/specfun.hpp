#pragma once

#include <complex>

namespace bandedge {

// Principal complex square root together with the phase of its square.
// value = sqrt(z) with arg(value) in (-pi/2, pi/2]; phase_of_square = arg(z)
// in (-pi, pi]. A negative-zero imaginary part of z is normalized to +0
// first, so inputs on the negative real axis land on the upper side of the
// cut and the stated ranges hold with no sign-of-zero surprises.
struct BranchedSqrt {
    std::complex<double> value;
    double phase_of_square = 0.0;
};

BranchedSqrt principal_sqrt(std::complex<double> z);

// Scaled complementary error function erfcx(z) = e^{z^2} erfc(z) with an
// overflow flag. The scaled form is bounded for Re(z) >= 0; for Re(z) < 0 it
// is evaluated through erfcx(-z) = 2 e^{z^2} - erfcx(z) and grows like
// 2 e^{z^2}, which exceeds the floating range once Re(z^2) > ~709. In that
// case value is infinite and overflow is set instead of throwing: callers
// that guarantee Re(z) >= 0 arguments (the closed-form evaluator does, by
// its square-root sign choice) treat the flag as an internal logic error.
struct ErfcxResult {
    std::complex<double> value;
    bool overflow = false;
};

ErfcxResult erfcx_checked(std::complex<double> z);

// Convenience accessor for erfcx_checked(z).value.
std::complex<double> erfcx(std::complex<double> z);

namespace detail {

// The two evaluation methods behind erfcx, exposed so their agreement can be
// checked on the region boundary. Region map (after symmetry reduction to
// Re(z) >= 0, Im(z) >= 0):
//
//   |z| < 4                      power series
//   |z| >= 4, Re >= 0.1 Im       continued fraction (Lentz)
//   4 <= |z| < 6, Re < 0.1 Im    power series (extended band)
//   |z| >= 6, Re < 0.1 Im        truncated asymptotic series
//
// The near-axis band exists because every asymptotic representation misses a
// contribution of size ~e^{-|z|^2} that is invisible to it; at |z| = 4 that
// is ~1e-7 relative, by |z| = 6 it is below 5e-15 and the asymptotic forms
// take over. The series sums both of its internal series in double-double
// arithmetic, which defeats the e^{|z|^2} cancellation it suffers near the
// axis and keeps it accurate through |z| = 6.

// Power series: erfcx(z) = E(z^2) - z*(2/sqrt(pi))*M(z^2) with
// E(q) = sum q^k / k! and M(q) = sum q^k / (3/2)_k. Accurate for |z| <= 6,
// any argument; degrades beyond as e^{|z|^2} eps^2.
std::complex<double> erfcx_series(std::complex<double> z);

// Large-|z| methods: Laplace continued fraction
// erfcx(z) = (1/sqrt(pi)) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
// in the sector |Re z| >= 0.1 |Im z|, and the truncated asymptotic series
// (1/(sqrt(pi) z)) sum (-1)^k (2k-1)!! / (2 z^2)^k near the imaginary axis.
// Requires Re(z) >= 0 (the continued fraction converges to the reflected
// branch for Re(z) < 0); intended for |z| >= 4 in the sector, |z| >= 6
// near the axis.
std::complex<double> erfcx_asymptotic(std::complex<double> z);

}  // namespace detail

}  // namespace bandedge
