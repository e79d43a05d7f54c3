#pragma once

// Reference implementations used only by the test suite. Every routine here
// reaches the quantity under test by a different route than the library
// (direct quadrature, classical closed-form algebra), so agreement is
// evidence rather than tautology.

#include <array>
#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// n-point Gauss-Legendre rule on [-1, 1], built at runtime by Newton
// iteration on the Legendre recurrence: no tabulated constants to
// mistranscribe. Cached per n.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_rule(int n);

// Composite Gauss-Legendre integration of a complex-valued f over [a, b].
template <class F>
cplx integrate(F&& f, double a, double b, int panels, int n = 24) {
    const GaussRule& r = gauss_rule(n);
    cplx acc = 0.0;
    const double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (static_cast<double>(p) + 0.5) * w;
        for (int i = 0; i < n; ++i) {
            acc += r.weights[static_cast<std::size_t>(i)] *
                   f(mid + 0.5 * w * r.nodes[static_cast<std::size_t>(i)]);
        }
    }
    return acc * (0.5 * w);
}

// erfcx(z) = (2/sqrt(pi)) Int_0^inf e^{-s^2 - 2 z s} ds. Requires
// Re(z) >= 0 so the integrand never exceeds 1; the left half plane is
// covered in tests through the reflection identity.
cplx erfcx_quadrature(cplx z);

// The three roots of x^3 + p x + q = 0 by Cardano's formula.
std::array<cplx, 3> cardano(cplx p, cplx q);

// Exact solution of b1' = -i Omega + i Delta_bar b1 ... precisely, of the
// kernel-free relaxation i b1' = Omega - Delta b1 with b1(0) = 0:
// b1(t) = (Omega / Delta)(1 - e^{i Delta t}).
cplx flat_kernel_b1(double omega, cplx big_delta, double t);

// Int_0^200 e^{-s t} K(t) dt for the band-edge kernel, via t = u^2.
cplx kernel_laplace_quadrature(double beta, double dp, cplx s);

// The kernel rebuilt from its defining density-of-modes integral
// (2 beta^{3/2} / pi) e^{-i dp tau} Int_0^inf e^{-i tau v^2} dv, truncated
// at v = 100 with a two-term integration-by-parts tail.
cplx kernel_time_dom_quadrature(double beta, double dp, double tau);

}  // namespace oracle
