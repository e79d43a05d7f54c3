#include "bandedge/closedform.hpp"

#include <cmath>
#include <sstream>

#include "bandedge/errors.hpp"
#include "bandedge/kernels.hpp"
#include "bandedge/polyroots.hpp"
#include "bandedge/specfun.hpp"

namespace bandedge {

namespace {

using cplx = std::complex<double>;

}  // namespace

RootSystem build_root_system(const SystemParams& params) {
    validate(params);
    const ComplexPolynomial quintic = build_quintic(params);
    const RootList rl = find_roots(quintic);

    double coeff_scale = 0.0;
    for (const cplx& c : quintic.coefficients) coeff_scale = std::max(coeff_scale, std::abs(c));
    const double zero_tol = 1e-12 * (1.0 + coeff_scale);

    RootSystem rs;
    rs.delta_prime = derive(params).delta_prime;
    rs.omega_rabi = params.omega_rabi;

    std::array<bool, 5> is_zero{};
    for (int i = 0; i < 5; ++i) {
        rs.x[static_cast<std::size_t>(i)] = rl.roots[static_cast<std::size_t>(i)];
        is_zero[static_cast<std::size_t>(i)] = std::abs(rl.roots[static_cast<std::size_t>(i)]) <= zero_tol;
    }

    // A close pair is fatal unless both members are the excluded zero roots.
    for (const auto& [i, j] : rl.close_pairs) {
        if (!(is_zero[static_cast<std::size_t>(i)] && is_zero[static_cast<std::size_t>(j)])) {
            std::ostringstream msg;
            msg << "roots " << i << " and " << j
                << " coincide within 1e-6 of the root scale; the expansion "
                   "coefficients are singular there";
            throw DegenerateRoots(msg.str());
        }
    }

    const cplx i_omega(0.0, params.omega_rabi);
    for (std::size_t i = 0; i < 5; ++i) {
        const cplx xi = rs.x[i];
        if (is_zero[i]) {
            rs.contributing[i] = false;
            rs.alpha[i] = 0.0;
            rs.y[i] = xi;  // sign rule below is the identity at 0
            continue;
        }
        rs.contributing[i] = true;

        cplx denom = 1.0;
        for (std::size_t j = 0; j < 5; ++j) {
            if (j != i) denom *= xi - rs.x[j];
        }
        rs.alpha[i] = i_omega * xi / denom;

        // Sign copy keeps y^2 = x^2 exact; Re(y) >= 0 always.
        if (xi.real() > 0.0) {
            rs.y[i] = xi;
        } else if (xi.real() < 0.0) {
            rs.y[i] = -xi;
        } else {
            rs.y[i] = (xi.imag() >= 0.0) ? xi : -xi;
        }
    }
    return rs;
}

AmplitudeTrace eval_b1(const RootSystem& rs, const TimeGrid& grid) {
    validate(grid);

    // Per-root pieces of
    //   b1(t) = -e^{-i delta' t} sum_i alpha_i x_i e^{x_i^2 t} erfc(-x_i sqrt t),
    // regrouped so no factor can overflow. With w = y_i sqrt(t) (Re w >= 0,
    // w^2 = x_i^2 t exactly since y_i^2 = x_i^2 by construction):
    //
    //   y_i = x_i:   x_i e^{x_i^2 t} erfc(-w)
    //                  = 2 x_i e^{x_i^2 t} - x_i erfcx(w)
    //                via erfc(-w) = 2 - erfc(w) and e^{w^2} erfc(w) = erfcx(w).
    //                These are the stable poles (Re(x_i^2) <= 0), so the bare
    //                exponential stays bounded.
    //   y_i = -x_i:  x_i e^{x_i^2 t} erfc(-x_i sqrt t) = x_i erfcx(w): the
    //                exponential is absorbed entirely. Re(x_i^2) may be
    //                positive for these roots and e^{x_i^2 t} alone would
    //                overflow near Re(x_i^2) t ~ 700, so it is never formed.
    std::array<cplx, 5> x_sq{};
    std::array<bool, 5> plus_branch{};
    for (std::size_t i = 0; i < 5; ++i) {
        x_sq[i] = rs.x[i] * rs.x[i];
        plus_branch[i] = (rs.y[i] == rs.x[i]);
    }

    AmplitudeTrace out;
    out.grid = grid;
    out.method = TraceMethod::closed_form;
    out.b1.resize(grid.size());
    out.b0.assign(grid.size(), cplx(1.0, 0.0));

    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid.time_at(k);
        const double sqrt_t = std::sqrt(t);
        cplx sum = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            if (!rs.contributing[i]) continue;
            const cplx w = rs.y[i] * sqrt_t;
            const ErfcxResult e = erfcx_checked(w);
            if (e.overflow) {
                throw OverflowDetected("erfcx overflow on the bounded branch (Re(w) >= 0 expected)");
            }
            if (plus_branch[i]) {
                sum += rs.alpha[i] * (2.0 * rs.x[i] * std::exp(x_sq[i] * t) - rs.y[i] * e.value);
            } else {
                sum += rs.alpha[i] * (-rs.y[i] * e.value);
            }
        }
        const cplx frame = std::polar(1.0, -rs.delta_prime * t);
        const cplx v = -frame * sum;
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream msg;
            msg << "non-finite amplitude sample at t = " << t;
            throw OverflowDetected(msg.str());
        }
        out.b1[k] = v;
    }
    return out;
}

SusceptibilityTrace eval_susceptibility(const SystemParams& params,
                                        const AmplitudeTrace& amp) {
    validate(params);
    if (amp.b1.empty() || amp.b1.size() != amp.b0.size()) {
        throw InvalidParams("amplitude trace is empty or inconsistent");
    }

    SusceptibilityTrace out;
    out.grid = amp.grid;
    out.chi.resize(amp.b1.size());
    out.neg_im_chi.resize(amp.b1.size());
    out.population1.resize(amp.b1.size());

    const double ratio = params.omega_rabi > 0.0
                             ? params.chi_prefactor / params.omega_rabi
                             : 0.0;  // probe off: linear-response limit is 0
    for (std::size_t k = 0; k < amp.b1.size(); ++k) {
        const cplx chi = -ratio * amp.b0[k] * std::conj(amp.b1[k]);
        out.chi[k] = chi;
        out.neg_im_chi[k] = -chi.imag();
        out.population1[k] = std::norm(amp.b1[k]);
    }
    return out;
}

std::complex<double> steady_state_value(const SystemParams& params) {
    validate(params);
    const DerivedParams d = derive(params);
    if (d.delta_prime == 0.0) {
        // K~(s) ~ 1/sqrt(s) diverges at s = 0; the limit is exact transparency.
        return {0.0, 0.0};
    }
    // K~(0+) = kappa / sqrt(i delta') with the principal root; computed
    // directly rather than through kernel_laplace so arbitrarily small
    // delta' stays continuous instead of tripping the cut-proximity guard.
    const cplx kappa(d.k0.imag(), -d.k0.real());  // kappa = -i k0 = beta^{3/2} e^{-i pi/4}
    const cplx k_at_zero = kappa / principal_sqrt(cplx(0.0, d.delta_prime)).value;

    const cplx denom = cplx(params.delta, params.gamma / 2.0) + cplx(0.0, 1.0) * k_at_zero;
    const double scale = std::abs(params.delta) + params.gamma / 2.0 + std::abs(k_at_zero);
    if (std::abs(denom) <= 1e-14 * scale) {
        throw UndefinedLimit("steady-state denominator delta + i gamma/2 + i K~(0) vanishes");
    }
    return params.omega_rabi / denom;
}

double max_b0_deviation(const AmplitudeTrace& amp) {
    double worst = 0.0;
    for (const cplx& v : amp.b0) worst = std::max(worst, std::abs(cplx(1.0, 0.0) - v));
    return worst;
}

}  // namespace bandedge
