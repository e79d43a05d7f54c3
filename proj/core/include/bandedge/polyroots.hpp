#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "bandedge/params.hpp"

namespace bandedge {

// Polynomial with complex coefficients in ascending degree order:
// p(x) = coefficients[0] + coefficients[1] x + ... + coefficients[n] x^n.
struct ComplexPolynomial {
    std::vector<std::complex<double>> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

// All roots of a polynomial, sorted by (real part, imaginary part).
//   residuals[i] = |p(roots[i])| / sum_k |c_k| |roots[i]|^k, a backward-error
//     measure that is <= 1e-10 for every root (contract of find_roots).
//   close_pairs lists index pairs (i < j) with |roots[i] - roots[j]| below
//     1e-6 * max|root|; consumers that divide by root differences must treat
//     those as degenerate.
struct RootList {
    std::vector<std::complex<double>> roots;
    std::vector<double> residuals;
    std::vector<std::pair<int, int>> close_pairs;
};

// Simultaneous-iteration root finder (Aberth-Ehrlich) with Newton polishing.
// Deterministic: initial guesses sit on a circle of radius 1 + max|c_k/c_n|
// at fixed angular offsets, so repeated calls give bit-identical results.
// Zero roots arising from exactly-zero trailing coefficients are split off
// symbolically first and reported exactly.
//
// Throws LeadingZero if the leading coefficient is zero (or any coefficient
// is not finite), InvalidParams for degree < 1, NonConvergence if the
// residual contract cannot be met within the iteration budget.
RootList find_roots(const ComplexPolynomial& p);

// The quintic x^5 + c3 x^3 + c2 x^2 + c1 x + c0 whose roots drive the
// closed-form solution, in ascending order [c0, c1, c2, c3, 0, 1]:
//   c3 = gamma/2 - i (delta_g + delta'),  c2 = -i K0,
//   c1 = -delta' (delta_g + i gamma/2),   c0 = -K0 delta',
// with delta' and K0 from derive(). Algebraically this factors as
// (x^2 - i delta') * (x^3 + (gamma/2 - i delta_g) x - i K0).
ComplexPolynomial build_quintic(const SystemParams& params);

}  // namespace bandedge
