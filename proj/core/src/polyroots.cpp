#include "bandedge/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bandedge/errors.hpp"

namespace bandedge {

namespace {

using cplx = std::complex<double>;

// p(z) and p'(z) by a single Horner pass over ascending coefficients.
void eval_poly(const std::vector<cplx>& c, cplx z, cplx& value, cplx& deriv) {
    cplx v = c.back();
    cplx d = 0.0;
    for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
        d = d * z + v;
        v = v * z + c[static_cast<std::size_t>(k)];
    }
    value = v;
    deriv = d;
}

// |p(z)| / sum_k |c_k| |z|^k; the scale sum is the worst-case magnitude of
// p(z) under coefficient-wise rounding, so this is a relative backward error.
double residual_at(const std::vector<cplx>& c, cplx z) {
    cplx v, d;
    eval_poly(c, z, v, d);
    double scale = 0.0;
    double zp = 1.0;
    const double az = std::abs(z);
    for (const cplx& ck : c) {
        scale += std::abs(ck) * zp;
        zp *= az;
    }
    if (scale == 0.0) return 0.0;
    return std::abs(v) / scale;
}

// Aberth-Ehrlich simultaneous iteration on a monic polynomial of degree >= 2
// with a nonzero constant term. Deterministic start: circle of radius
// 1 + max|c_k| (Cauchy bound) with a fixed angular offset.
std::vector<cplx> aberth(const std::vector<cplx>& monic) {
    const int n = static_cast<int>(monic.size()) - 1;
    double cmax = 0.0;
    for (int k = 0; k < n; ++k) cmax = std::max(cmax, std::abs(monic[static_cast<std::size_t>(k)]));
    const double radius = 1.0 + cmax;
    constexpr double angle_offset = 0.4;

    std::vector<cplx> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double th = 2.0 * std::numbers::pi * i / n + angle_offset;
        z[static_cast<std::size_t>(i)] = radius * cplx(std::cos(th), std::sin(th));
    }

    constexpr int max_iter = 200;
    for (int iter = 0; iter < max_iter; ++iter) {
        bool done = true;
        for (int i = 0; i < n; ++i) {
            cplx v, d;
            eval_poly(monic, z[static_cast<std::size_t>(i)], v, d);
            if (v == cplx(0.0, 0.0)) continue;
            cplx ratio = (d == cplx(0.0, 0.0)) ? cplx(0.0, 0.0) : v / d;
            cplx repulse = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                cplx diff = z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
                if (diff == cplx(0.0, 0.0)) diff = cplx(1e-14 * radius, 0.0);
                repulse += 1.0 / diff;
            }
            cplx step;
            if (d == cplx(0.0, 0.0)) {
                // At a stationary point; nudge deterministically off it.
                step = cplx(1e-8 * radius, 1e-8 * radius);
            } else {
                step = ratio / (1.0 - ratio * repulse);
            }
            z[static_cast<std::size_t>(i)] -= step;
            if (std::abs(step) > 1e-14 * (1.0 + std::abs(z[static_cast<std::size_t>(i)]))) done = false;
        }
        if (done) break;
    }

    // Newton polish, three steps per root.
    for (int i = 0; i < n; ++i) {
        for (int it = 0; it < 3; ++it) {
            cplx v, d;
            eval_poly(monic, z[static_cast<std::size_t>(i)], v, d);
            if (d == cplx(0.0, 0.0)) break;
            z[static_cast<std::size_t>(i)] -= v / d;
        }
    }
    return z;
}

bool root_order(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

RootList find_roots(const ComplexPolynomial& p) {
    const auto& c = p.coefficients;
    if (p.degree() < 1) {
        throw InvalidParams("find_roots requires degree >= 1");
    }
    for (const cplx& ck : c) {
        if (!std::isfinite(ck.real()) || !std::isfinite(ck.imag())) {
            throw LeadingZero("polynomial coefficients must be finite");
        }
    }
    if (c.back() == cplx(0.0, 0.0)) {
        throw LeadingZero("leading coefficient is zero");
    }

    // Exactly-zero trailing coefficients factor out exact zero roots. This
    // must happen before the iteration: a double zero root found iteratively
    // would land at ~sqrt(eps) and poison the zero/nonzero classification
    // downstream.
    std::size_t zero_count = 0;
    while (zero_count < c.size() - 1 && c[zero_count] == cplx(0.0, 0.0)) ++zero_count;

    std::vector<cplx> reduced(c.begin() + static_cast<std::ptrdiff_t>(zero_count), c.end());
    const cplx lead = reduced.back();
    for (cplx& ck : reduced) ck /= lead;

    std::vector<cplx> roots(zero_count, cplx(0.0, 0.0));
    const int m = static_cast<int>(reduced.size()) - 1;
    if (m == 1) {
        roots.push_back(-reduced[0]);
    } else if (m >= 2) {
        const std::vector<cplx> found = aberth(reduced);
        roots.insert(roots.end(), found.begin(), found.end());
    }

    std::sort(roots.begin(), roots.end(), root_order);

    RootList out;
    out.roots = std::move(roots);
    out.residuals.reserve(out.roots.size());
    double worst = 0.0;
    for (const cplx& r : out.roots) {
        // Stripped zeros are exact roots by construction.
        const double res = (r == cplx(0.0, 0.0) && zero_count > 0) ? 0.0 : residual_at(c, r);
        out.residuals.push_back(res);
        worst = std::max(worst, res);
    }
    if (worst >= 1e-10) {
        std::ostringstream msg;
        msg << "root residual " << worst << " exceeds 1e-10 after iteration budget";
        throw NonConvergence(msg.str());
    }

    double rmax = 0.0;
    for (const cplx& r : out.roots) rmax = std::max(rmax, std::abs(r));
    const double close_tol = 1e-6 * std::max(rmax, 1e-300);
    for (std::size_t i = 0; i < out.roots.size(); ++i) {
        for (std::size_t j = i + 1; j < out.roots.size(); ++j) {
            if (std::abs(out.roots[i] - out.roots[j]) < close_tol) {
                out.close_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    return out;
}

ComplexPolynomial build_quintic(const SystemParams& params) {
    validate(params);
    const DerivedParams d = derive(params);
    const double dp = d.delta_prime;
    const cplx i(0.0, 1.0);

    const cplx c3 = cplx(params.gamma / 2.0, 0.0) - i * (params.delta_g + dp);
    const cplx c2 = -i * d.k0;
    const cplx c1 = -dp * cplx(params.delta_g, params.gamma / 2.0);
    const cplx c0 = -d.k0 * dp;

    ComplexPolynomial p;
    p.coefficients = {c0, c1, c2, c3, cplx(0.0, 0.0), cplx(1.0, 0.0)};
    return p;
}

}  // namespace bandedge
