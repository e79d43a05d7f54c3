#pragma once

#include <array>
#include <complex>
#include <vector>

#include "bandedge/params.hpp"

namespace bandedge {

enum class TraceMethod { closed_form, volterra_perturbative, volterra_full };

// The five quintic roots with everything the closed-form solution needs:
//   x[i]           the roots, in deterministic (Re, Im) order
//   y[i]           branch-resolved square root of x[i]^2: y = x when
//                  Re(x) > 0, y = -x when Re(x) < 0; ties Re(x) = 0 keep
//                  y = x for Im(x) >= 0 and y = -x otherwise. Constructed by
//                  sign copy, so y^2 = x^2 holds exactly and Re(y) >= 0.
//   alpha[i]       expansion coefficients i*Omega*x_i / prod_{j != i}(x_i - x_j)
//   contributing[i] false for exact zero roots, whose alpha is 0 and which
//                  drop out of the solution entirely
//   delta_prime    rotation rate of the evaluation frame (see eval_b1)
//   omega_rabi     probe amplitude the alphas were built with
struct RootSystem {
    std::array<std::complex<double>, 5> x{};
    std::array<std::complex<double>, 5> y{};
    std::array<std::complex<double>, 5> alpha{};
    std::array<bool, 5> contributing{};
    double delta_prime = 0.0;
    double omega_rabi = 0.0;
};

// Complex amplitudes on a time grid. b0 is identically 1 in perturbative
// traces (closed form and perturbative Volterra); the full-system solver
// fills in the actual ground-state amplitude.
struct AmplitudeTrace {
    TimeGrid grid;
    std::vector<std::complex<double>> b1;
    std::vector<std::complex<double>> b0;
    TraceMethod method = TraceMethod::closed_form;
};

// Probe response on a time grid: chi, its negated imaginary part (positive
// where the probe is absorbed, negative where it sees gain), and the upper
// level population |b1|^2.
struct SusceptibilityTrace {
    TimeGrid grid;
    std::vector<std::complex<double>> chi;
    std::vector<double> neg_im_chi;
    std::vector<double> population1;
};

// Roots, branch choices and expansion coefficients for a parameter set.
// Throws DegenerateRoots when two roots closer than 1e-6 * max|root| are not
// both exact zeros: the alpha formula divides by their difference. Exact
// zero roots (|x| <= 1e-12 * (1 + max coefficient magnitude)) are excluded
// from the expansion with alpha = 0.
RootSystem build_root_system(const SystemParams& params);

// The closed-form transient amplitude on a grid:
//   b1(t) = -e^{-i delta' t} * sum_i alpha_i x_i e^{x_i^2 t} erfc(-x_i sqrt t)
// over contributing roots. The overall sign makes the initial slope
// db1/dt(0+) = -i Omega, and the e^{-i delta' t} factor carries the solution
// from the band-edge frame back to the probe frame (without it, parameter
// sets with delta' != 0 would spuriously oscillate at late times instead of
// settling). Each term is evaluated in the overflow-safe regrouping
// documented in the implementation. Throws OverflowDetected if any sample
// comes out non-finite, which indicates a branch-selection bug rather than a
// legitimate large value.
AmplitudeTrace eval_b1(const RootSystem& rs, const TimeGrid& grid);

// chi(t) = -(chi_prefactor / Omega) * b0(t) * conj(b1(t)), plus -Im(chi) and
// |b1|^2 columns. For omega_rabi = 0 (probe off) chi is defined as 0: b1 is
// identically zero and the ratio is taken in the linear-response limit.
SusceptibilityTrace eval_susceptibility(const SystemParams& params,
                                        const AmplitudeTrace& amp);

// lim_{t -> inf} b1(t) = Omega / (delta + i gamma/2 + i K~(0+)) where K~ is
// the reservoir kernel's Laplace transform. For delta' = 0 the kernel
// diverges at s = 0 and the limit is exactly 0 (steady-state transparency).
// Throws UndefinedLimit when the denominator vanishes.
std::complex<double> steady_state_value(const SystemParams& params);

// max_t |1 - b0(t)|: size of the perturbative-regime violation in a trace.
double max_b0_deviation(const AmplitudeTrace& amp);

}  // namespace bandedge
