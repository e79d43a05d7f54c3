#include "bandedge/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bandedge/errors.hpp"
#include "bandedge/specfun.hpp"

namespace bandedge {

namespace {

using cplx = std::complex<double>;

void check_spec(const KernelSpec& spec) {
    if (spec.kind == KernelKind::inverse_sqrt_edge) {
        if (!(spec.beta >= 0.0) || !std::isfinite(spec.beta) || !std::isfinite(spec.delta_prime)) {
            throw InvalidParams("edge kernel requires finite beta >= 0 and finite delta_prime");
        }
    } else {
        if (!(spec.gamma_flat >= 0.0) || !std::isfinite(spec.gamma_flat)) {
            throw InvalidParams("flat kernel requires finite gamma_flat >= 0");
        }
    }
}

// kappa = beta^{3/2} e^{-i pi/4}
cplx kappa_of(const KernelSpec& spec) {
    const double mag = std::pow(spec.beta, 1.5);
    const double c = std::cos(std::numbers::pi / 4.0);
    return {mag * c, -mag * c};
}

}  // namespace

std::complex<double> kernel_time(const KernelSpec& spec, double tau) {
    check_spec(spec);
    if (spec.kind == KernelKind::markovian_flat) {
        throw NotPointwise("flat kernel is a delta distribution; no pointwise values");
    }
    if (!(tau > 0.0)) {
        std::ostringstream msg;
        msg << "kernel is singular at tau = " << tau << " (requires tau > 0)";
        throw SingularAtZero(msg.str());
    }
    const cplx osc = std::polar(1.0, -spec.delta_prime * tau);
    return kappa_of(spec) * osc / std::sqrt(std::numbers::pi * tau);
}

std::complex<double> kernel_laplace(const KernelSpec& spec, std::complex<double> s) {
    check_spec(spec);
    if (spec.kind == KernelKind::markovian_flat) {
        return {spec.gamma_flat / 2.0, 0.0};
    }
    // Shifted variable w = s + i delta'; the cut sits on w in -[0, inf).
    const cplx w = s + cplx(0.0, spec.delta_prime);
    const double dist = (w.real() <= 0.0) ? std::abs(w.imag()) : std::abs(w);
    if (dist < 1e-12) {
        std::ostringstream msg;
        msg << "s = (" << s.real() << ", " << s.imag()
            << ") lies within 1e-12 of the branch cut";
        throw BranchCut(msg.str());
    }
    return kappa_of(spec) / principal_sqrt(w).value;
}

}  // namespace bandedge
