#include "bandedge/params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bandedge/errors.hpp"

namespace bandedge {

namespace {

bool all_finite(const SystemParams& p) {
    return std::isfinite(p.beta) && std::isfinite(p.gamma) && std::isfinite(p.delta) &&
           std::isfinite(p.delta_g) && std::isfinite(p.omega_rabi) &&
           std::isfinite(p.chi_prefactor);
}

}  // namespace

void validate(const SystemParams& p) {
    if (!all_finite(p)) {
        throw InvalidParams("system parameters must be finite");
    }
    if (p.beta <= 0.0) {
        throw InvalidParams("beta must be positive, got " + std::to_string(p.beta));
    }
    if (p.gamma < 0.0) {
        throw InvalidParams("gamma must be nonnegative, got " + std::to_string(p.gamma));
    }
    if (p.omega_rabi < 0.0) {
        throw InvalidParams("omega_rabi must be nonnegative, got " +
                            std::to_string(p.omega_rabi));
    }
    if (p.chi_prefactor <= 0.0) {
        throw InvalidParams("chi_prefactor must be positive, got " +
                            std::to_string(p.chi_prefactor));
    }
}

void validate(const TimeGrid& grid) {
    if (!std::isfinite(grid.t_max) || grid.t_max <= 0.0) {
        throw InvalidParams("t_max must be positive and finite");
    }
    if (grid.n_steps < 2) {
        throw InvalidParams("n_steps must be at least 2, got " +
                            std::to_string(grid.n_steps));
    }
}

std::vector<std::string> param_warnings(const SystemParams& p) {
    std::vector<std::string> warnings;
    const double bound = 0.1 * (p.gamma > 0.0 ? std::min(p.beta, p.gamma) : p.beta);
    if (p.omega_rabi > bound) {
        std::ostringstream msg;
        msg << "omega_rabi = " << p.omega_rabi << " exceeds the perturbative bound "
            << bound << "; linear-response output is unreliable, prefer the "
            << "full-system solver";
        warnings.push_back(msg.str());
    }
    return warnings;
}

DerivedParams derive(const SystemParams& p) {
    DerivedParams d;
    d.delta_prime = p.delta_g - p.delta;
    // i e^{-i pi/4} = e^{+i pi/4}, so k0 = beta^{3/2} (cos(pi/4) + i sin(pi/4)).
    const double mag = std::pow(p.beta, 1.5);
    const double c = std::cos(std::numbers::pi / 4.0);
    d.k0 = std::complex<double>(mag * c, mag * c);
    return d;
}

SystemParams reduced(const SystemParams& p) {
    SystemParams r = p;
    r.beta = 1.0;
    r.gamma = p.gamma / p.beta;
    r.delta = p.delta / p.beta;
    r.delta_g = p.delta_g / p.beta;
    r.omega_rabi = p.omega_rabi / p.beta;
    return r;
}

}  // namespace bandedge
