#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace bandedge {

// Physical parameters of the driven three-level emitter. All rates and
// detunings are measured in units of the reservoir coupling constant beta;
// beta itself is kept explicit so that every formula below stays exact for
// any beta > 0, and reduced() provides the rescaled beta = 1 view.
//
//   gamma    background decay rate of the upper level
//   delta    probe detuning (probe frequency minus transition frequency)
//   delta_g  gap detuning (band-edge frequency minus reservoir transition)
struct SystemParams {
    double beta = 1.0;
    double gamma = 0.2;
    double delta = 0.0;
    double delta_g = 0.0;
    double omega_rabi = 0.01;
    double chi_prefactor = 1.0;
};

// Quantities derived from SystemParams that every solver needs:
//   delta_prime = delta_g - delta, the detuning from the band edge
//   k0 = i beta^{3/2} e^{-i pi/4} = beta^{3/2} e^{+i pi/4}
struct DerivedParams {
    double delta_prime = 0.0;
    std::complex<double> k0;
};

// Uniform time grid: points t_k = k*h for k = 0..n_steps, h = t_max/n_steps.
struct TimeGrid {
    double t_max = 50.0;
    int n_steps = 5000;

    double step() const { return t_max / n_steps; }
    std::size_t size() const { return static_cast<std::size_t>(n_steps) + 1; }
    // Endpoint is pinned to t_max so the last sample never drifts by a rounding ulp.
    double time_at(std::size_t k) const {
        return k == static_cast<std::size_t>(n_steps) ? t_max
                                                      : step() * static_cast<double>(k);
    }
};

// Throws InvalidParams unless beta > 0, gamma >= 0, omega_rabi >= 0,
// chi_prefactor > 0 and everything is finite. omega_rabi = 0 is allowed
// (probe off: b1 and chi are identically zero) even though typical use has
// omega_rabi > 0.
void validate(const SystemParams& p);

// Throws InvalidParams unless t_max > 0, n_steps >= 2 and t_max is finite.
void validate(const TimeGrid& grid);

// Non-fatal diagnostics: currently one entry when omega_rabi exceeds the
// perturbative regime omega_rabi <= 0.1*min(beta, gamma) (gamma > 0), or
// 0.1*beta when gamma = 0. A strong probe is legitimate input for the
// full-system solver, so this is a warning rather than an error.
std::vector<std::string> param_warnings(const SystemParams& p);

// delta_prime and k0 from the definitions above. Pure: identical inputs give
// bit-identical outputs.
DerivedParams derive(const SystemParams& p);

// The same physical system expressed in units of beta (beta = 1): rates and
// detunings divide by beta, times multiply by beta. Exact rescaling, not an
// approximation: b1 traces of p on grid t and of reduced(p) on grid beta*t
// coincide.
SystemParams reduced(const SystemParams& p);

}  // namespace bandedge
