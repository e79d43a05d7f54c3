#include "bandedge/volterra.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "bandedge/errors.hpp"

namespace bandedge {

namespace {

using cplx = std::complex<double>;

constexpr double max_step = 0.05;

// Product-integration weights for Int_0^{t_n} g(t') / sqrt(pi (t_n - t')) dt'
// with g piecewise linear on the uniform grid. In the lag variable
// tau = t_n - t', subinterval m covers tau in [(m-1)h, mh] and the two
// half-moments
//
//   M0(m) = Int 1/sqrt(pi tau) dtau   = (2/sqrt(pi)) h^{1/2} / (sqrt(m) + sqrt(m-1))
//   M1(m) = Int tau/sqrt(pi tau) dtau = (2/(3 sqrt(pi))) h^{3/2}
//             (2m - 1 + sqrt(m(m-1))) / (sqrt(m) + sqrt(m-1))
//
// are exact (rationalized so m=1 costs no cancellation). Linear g on the
// subinterval splits them between its endpoints:
//
//   B(m) = m M0(m) - M1(m)/h   (weight on the newer endpoint, lag (m-1)h)
//   A(m) = M0(m) - B(m)        (weight on the older endpoint, lag mh)
//
// Summing over subintervals gives the node weight at lag mh as
// A(m) + B(m+1) for interior nodes and B(1) for the current node. The
// node at lag t_n (t' = 0) would carry A(n), but b1(0) = 0 drops it.
struct ProductWeights {
    double current;                // B(1) = (4/3) sqrt(h/pi)
    std::vector<double> interior;  // interior[m] = A(m) + B(m+1), m = 1..N-1
};

ProductWeights make_weights(double h, std::size_t n_steps) {
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    const double m0_scale = 2.0 * std::sqrt(h) / sqrt_pi;
    const double m1_scale = 2.0 * h * std::sqrt(h) / (3.0 * sqrt_pi);

    auto b_of = [&](std::size_t m) {
        const double sm = std::sqrt(static_cast<double>(m));
        const double sm1 = std::sqrt(static_cast<double>(m - 1));
        const double m0 = m0_scale / (sm + sm1);
        const double m1 = m1_scale * (2.0 * static_cast<double>(m) - 1.0 + sm * sm1) / (sm + sm1);
        return static_cast<double>(m) * m0 - m1 / h;
    };
    auto m0_of = [&](std::size_t m) {
        const double sm = std::sqrt(static_cast<double>(m));
        const double sm1 = std::sqrt(static_cast<double>(m - 1));
        return m0_scale / (sm + sm1);
    };

    ProductWeights w;
    w.current = b_of(1);
    w.interior.assign(n_steps, 0.0);  // index m used for m >= 1
    for (std::size_t m = 1; m < n_steps; ++m) {
        const double a_m = m0_of(m) - b_of(m);
        w.interior[m] = a_m + b_of(m + 1);
    }
    return w;
}

struct Stepper {
    double h;
    cplx lambda;       // -gamma/2 + i delta
    cplx kappa;        // beta^{3/2} e^{-i pi/4}, or 0 when the memory is local
    double dp;         // delta'
    cplx minus_i_omega;
    ProductWeights w;
    std::vector<cplx> g_hat;  // e^{+i delta' t_j} b1_j, filled as the solve advances

    // History part of the memory at step n: kappa e^{-i delta' t_n} H_n with
    // H_n = sum_{m=1..n-1} interior[m] g_hat[n-m]. The t'=0 node drops since
    // b1(0) = 0.
    cplx history(std::size_t n) const {
        cplx acc = 0.0;
        for (std::size_t m = 1; m < n; ++m) acc += w.interior[m] * g_hat[n - m];
        return acc;
    }
};

void check_finite(const cplx& v, double t) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream msg;
        msg << "state sample overflowed at t = " << t;
        throw NonFinite(msg.str());
    }
}

Stepper make_stepper(const SystemParams& params, const KernelSpec& spec,
                     const SolverConfig& cfg) {
    validate(params);
    validate(cfg.grid);
    const double h = cfg.grid.step();
    if (h > max_step) {
        std::ostringstream msg;
        msg << "grid step " << h << " exceeds " << max_step
            << "; the product-integration accuracy contract does not hold";
        throw StepTooLarge(msg.str());
    }

    Stepper st;
    st.h = h;
    st.minus_i_omega = cplx(0.0, -params.omega_rabi);
    st.lambda = cplx(-params.gamma / 2.0, params.delta);
    if (spec.kind == KernelKind::markovian_flat) {
        // (Gamma/2) delta(tau) acts pointwise: fold it into the decay and
        // run the same loop with no history.
        st.lambda -= spec.gamma_flat / 2.0;
        st.kappa = 0.0;
        st.dp = 0.0;
    } else {
        const double mag = std::pow(spec.beta, 1.5);
        const double c = std::cos(std::numbers::pi / 4.0);
        st.kappa = cplx(mag * c, -mag * c);
        st.dp = spec.delta_prime;
    }
    st.w = make_weights(h, cfg.grid.n_steps);
    st.g_hat.assign(cfg.grid.size(), cplx(0.0, 0.0));
    return st;
}

}  // namespace

AmplitudeTrace solve_perturbative(const SystemParams& params, const KernelSpec& spec,
                                  const SolverConfig& cfg) {
    if (cfg.mode != VolterraMode::perturbative) {
        throw InvalidParams("solve_perturbative requires cfg.mode = perturbative");
    }
    Stepper st = make_stepper(params, spec, cfg);
    const double h = st.h;

    AmplitudeTrace out;
    out.grid = cfg.grid;
    out.method = TraceMethod::volterra_perturbative;
    out.b1.assign(cfg.grid.size(), cplx(0.0, 0.0));
    out.b0.assign(cfg.grid.size(), cplx(1.0, 0.0));

    // Trapezoid on b1' = -i Omega + lambda b1 - M with the memory's current
    // node implicit:  M_n = kappa cw b1_n + kappa ph_n H_n.
    const cplx lhs = 1.0 / h - st.lambda / 2.0 + st.kappa * st.w.current / 2.0;
    cplx f_prev = st.minus_i_omega;  // b1'(0); b1(0) = 0 kills the other terms

    for (std::size_t n = 1; n < cfg.grid.size(); ++n) {
        const double t_n = cfg.grid.time_at(n);
        const cplx ph_n = std::polar(1.0, -st.dp * t_n);
        const cplx hist = st.kappa * ph_n * st.history(n);

        const cplx rhs = out.b1[n - 1] / h + f_prev / 2.0 + (st.minus_i_omega - hist) / 2.0;
        const cplx b1_n = rhs / lhs;
        check_finite(b1_n, t_n);

        out.b1[n] = b1_n;
        st.g_hat[n] = std::polar(1.0, st.dp * t_n) * b1_n;
        const cplx mem_n = st.kappa * st.w.current * b1_n + hist;
        f_prev = st.minus_i_omega + st.lambda * b1_n - mem_n;
    }
    return out;
}

AmplitudeTrace solve_full_system(const SystemParams& params, const KernelSpec& spec,
                                 const SolverConfig& cfg) {
    if (cfg.mode != VolterraMode::full_system) {
        throw InvalidParams("solve_full_system requires cfg.mode = full_system");
    }
    Stepper st = make_stepper(params, spec, cfg);
    const double h = st.h;
    const cplx i_omega = -st.minus_i_omega;

    AmplitudeTrace out;
    out.grid = cfg.grid;
    out.method = TraceMethod::volterra_full;
    out.b1.assign(cfg.grid.size(), cplx(0.0, 0.0));
    out.b0.assign(cfg.grid.size(), cplx(1.0, 0.0));

    // Trapezoid on the pair b0' = -i Omega b1, b1' = -i Omega b0 + lambda b1 - M.
    // Eliminating knowns leaves a 2x2 complex system per step:
    //   b0_n + (i Omega h/2) b1_n                    = b0_{n-1} - (i Omega h/2) b1_{n-1}
    //   (i Omega/2) b0_n + (1/h - lambda/2 + kappa cw/2) b1_n
    //                                    = b1_{n-1}/h + f_{n-1}/2 - hist_n/2
    // The (1,1) pivot is exactly 1, so eliminate b0 and back-substitute; with
    // Omega = 0 this propagates b0 bit-exactly instead of multiplying in a
    // rounded a22/det.
    const cplx a12 = i_omega * h / 2.0;
    const cplx a21 = i_omega / 2.0;
    const cplx a22 = 1.0 / h - st.lambda / 2.0 + st.kappa * st.w.current / 2.0;
    const cplx det = a22 - a12 * a21;  // a11 = 1

    cplx f1_prev = st.minus_i_omega;  // -i Omega b0(0) with b0(0) = 1

    for (std::size_t n = 1; n < cfg.grid.size(); ++n) {
        const double t_n = cfg.grid.time_at(n);
        const cplx ph_n = std::polar(1.0, -st.dp * t_n);
        const cplx hist = st.kappa * ph_n * st.history(n);

        const cplx r1 = out.b0[n - 1] - a12 * out.b1[n - 1];
        const cplx r2 = out.b1[n - 1] / h + f1_prev / 2.0 - hist / 2.0;

        const cplx b1_n = (r2 - a21 * r1) / det;
        const cplx b0_n = r1 - a12 * b1_n;
        check_finite(b0_n, t_n);
        check_finite(b1_n, t_n);

        out.b0[n] = b0_n;
        out.b1[n] = b1_n;
        st.g_hat[n] = std::polar(1.0, st.dp * t_n) * b1_n;
        const cplx mem_n = st.kappa * st.w.current * b1_n + hist;
        f1_prev = st.minus_i_omega * b0_n + st.lambda * b1_n - mem_n;
    }
    return out;
}

std::vector<std::string> solver_warnings(const SystemParams& params, const KernelSpec& spec,
                                         const SolverConfig& cfg) {
    std::vector<std::string> warnings = param_warnings(params);
    if (spec.kind == KernelKind::inverse_sqrt_edge) {
        const double h = cfg.grid.step();
        if (h * std::abs(spec.delta_prime) > 0.3) {
            std::ostringstream msg;
            msg << "h*|delta'| = " << h * std::abs(spec.delta_prime)
                << " > 0.3: the piecewise-linear fit undersamples the memory "
                   "phase; reduce the step";
            warnings.push_back(msg.str());
        }
    }
    return warnings;
}

}  // namespace bandedge
