#pragma once

#include <complex>

#include "bandedge/params.hpp"

namespace bandedge {

// Memory-kernel family for the amplitude equation
//   i db1/dt = Omega - (delta + i gamma/2) b1 - i * int_0^t K(t-t') b1(t') dt'.
//
// inverse_sqrt_edge: reservoir with density of modes ~ 1/sqrt(omega - omega_g)
// above a band edge. Time domain K(tau) = kappa e^{-i delta' tau}/sqrt(pi tau)
// with kappa = beta^{3/2} e^{-i pi/4}; Laplace domain K~(s) = kappa/sqrt(s + i delta').
//
// markovian_flat: structureless reservoir, K~(s) = Gamma/2 (constant), i.e. a
// delta-function kernel. Exactly solvable (gamma -> gamma + Gamma), kept as a
// validation limit.
enum class KernelKind { inverse_sqrt_edge, markovian_flat };

struct KernelSpec {
    KernelKind kind = KernelKind::inverse_sqrt_edge;
    double beta = 1.0;         // inverse_sqrt_edge: coupling (>= 0; 0 turns the kernel off)
    double delta_prime = 0.0;  // inverse_sqrt_edge: oscillation rate delta_g - delta
    double gamma_flat = 0.0;   // markovian_flat: effective decay rate Gamma

    static KernelSpec edge(double beta, double delta_prime) {
        return {KernelKind::inverse_sqrt_edge, beta, delta_prime, 0.0};
    }
    static KernelSpec flat(double gamma_flat) {
        return {KernelKind::markovian_flat, 0.0, 0.0, gamma_flat};
    }
    // The edge kernel matching a parameter set: beta and delta_g - delta.
    static KernelSpec from_params(const SystemParams& p) {
        return edge(p.beta, p.delta_g - p.delta);
    }
};

// Pointwise kernel value K(tau) for tau > 0. Throws SingularAtZero for
// tau <= 0 (the edge kernel diverges as 1/sqrt(tau)) and NotPointwise for the
// flat kernel, whose time-domain form is a delta distribution.
std::complex<double> kernel_time(const KernelSpec& spec, double tau);

// Laplace transform K~(s).For the edge kernel the principal square root puts
// the branch cut on s in -i delta' - [0, inf); throws BranchCut when s lies
// within 1e-12 of the cut (including its endpoint, where K~ diverges).
std::complex<double> kernel_laplace(const KernelSpec& spec, std::complex<double> s);

}  // namespace bandedge
