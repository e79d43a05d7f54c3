#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "bandedge/errors.hpp"
#include "bandedge/params.hpp"
#include "bandedge/polyroots.hpp"
#include "bandedge/specfun.hpp"
#include "doctest.h"
#include "oracles.hpp"

using cplx = std::complex<double>;
using bandedge::build_quintic;
using bandedge::ComplexPolynomial;
using bandedge::find_roots;
using bandedge::SystemParams;

namespace {

// Greedy optimal pairing distance between two root multisets of equal size.
double set_distance(std::vector<cplx> a, std::vector<cplx> b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (const cplx& ra : a) {
        std::size_t best = 0;
        double bd = std::abs(ra - b[0]);
        for (std::size_t j = 1; j < b.size(); ++j) {
            const double d = std::abs(ra - b[j]);
            if (d < bd) {
                bd = d;
                best = j;
            }
        }
        worst = std::max(worst, bd);
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return worst;
}

// Expand prod_i (x - r_i) into ascending coefficients.
std::vector<cplx> expand_monic(const std::vector<cplx>& roots) {
    std::vector<cplx> c{1.0};
    for (const cplx& r : roots) {
        c.insert(c.begin(), cplx(0.0));
        for (std::size_t k = 0; k + 1 < c.size(); ++k) c[k] -= r * c[k + 1];
    }
    return c;
}

SystemParams random_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SystemParams p;
    p.beta = 0.2 + 3.0 * u(rng);
    p.gamma = 3.0 * u(rng);
    p.delta = -2.0 + 4.0 * u(rng);
    p.delta_g = -2.0 + 4.0 * u(rng);
    return p;
}

}  // namespace

TEST_CASE("find_roots: x^2 + 1") {
    const auto rl = find_roots({{cplx(1.0), cplx(0.0), cplx(1.0)}});
    REQUIRE(rl.roots.size() == 2);
    // Sorted by (re, im): -i before +i.
    CHECK(std::abs(rl.roots[0] - cplx(0.0, -1.0)) <= 1e-14);
    CHECK(std::abs(rl.roots[1] - cplx(0.0, 1.0)) <= 1e-14);
    CHECK(rl.close_pairs.empty());
}

TEST_CASE("find_roots: depressed cubic with unit-modulus roots") {
    // x^3 + e^{-i pi/4} = 0 has roots e^{i pi/4} rotated by multiples of
    // 2 pi / 3, all on the unit circle.
    const cplx c0 = std::polar(1.0, -std::numbers::pi / 4.0);
    const auto rl = find_roots({{c0, cplx(0.0), cplx(0.0), cplx(1.0)}});
    REQUIRE(rl.roots.size() == 3);
    std::vector<cplx> want = {
        std::polar(1.0, std::numbers::pi / 4.0),
        std::polar(1.0, std::numbers::pi / 4.0 + 2.0 * std::numbers::pi / 3.0),
        std::polar(1.0, std::numbers::pi / 4.0 - 2.0 * std::numbers::pi / 3.0),
    };
    CHECK(set_distance(rl.roots, want) <= 1e-13);
    for (const cplx& r : rl.roots) {
        CHECK(std::abs(std::abs(r) - 1.0) <= 1e-13);
    }
}

TEST_CASE("find_roots: zero trailing coefficients split off exactly") {
    // On the band edge the quintic has an exact double root at zero.
    SystemParams p;
    p.gamma = 1.0;
    p.delta = 0.0;
    p.delta_g = 0.0;
    const auto rl = find_roots(build_quintic(p));
    REQUIRE(rl.roots.size() == 5);

    int exact_zeros = 0;
    std::vector<cplx> nonzero;
    for (const cplx& r : rl.roots) {
        if (r == cplx(0.0, 0.0)) {
            ++exact_zeros;
        } else {
            nonzero.push_back(r);
        }
    }
    CHECK(exact_zeros == 2);

    // The remaining three match the cubic factor x^3 + (gamma/2) x - i K0.
    const auto d = bandedge::derive(p);
    const auto cb = oracle::cardano(cplx(p.gamma / 2.0), cplx(0.0, -1.0) * d.k0);
    CHECK(set_distance(nonzero, {cb.begin(), cb.end()}) <= 1e-12);

    // The double zero root is reported as a close pair.
    REQUIRE(!rl.close_pairs.empty());
    bool zero_pair = false;
    for (const auto& [i, j] : rl.close_pairs) {
        if (rl.roots[i] == cplx(0.0) && rl.roots[j] == cplx(0.0)) zero_pair = true;
    }
    CHECK(zero_pair);
}

TEST_CASE("find_roots: random polynomials meet the residual contract") {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const int deg = 1 + static_cast<int>(rng() % 8);
        ComplexPolynomial p;
        p.coefficients.resize(static_cast<std::size_t>(deg) + 1);
        for (auto& c : p.coefficients) {
            // Uniform in the unit disk by rejection.
            do {
                c = cplx(u(rng), u(rng));
            } while (std::abs(c) > 1.0);
        }
        if (std::abs(p.coefficients.back()) < 1e-3) {
            p.coefficients.back() += cplx(0.5, 0.0);
        }
        const auto rl = find_roots(p);
        REQUIRE(static_cast<int>(rl.roots.size()) == deg);
        for (double r : rl.residuals) CHECK(r < 1e-10);
    }
}

TEST_CASE("find_roots: deterministic and sorted") {
    std::mt19937 rng(1001);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexPolynomial p;
    for (int k = 0; k < 7; ++k) p.coefficients.emplace_back(u(rng), u(rng));
    p.coefficients.emplace_back(1.0);

    const auto a = find_roots(p);
    const auto b = find_roots(p);
    REQUIRE(a.roots.size() == b.roots.size());
    for (std::size_t i = 0; i < a.roots.size(); ++i) {
        CHECK(a.roots[i].real() == b.roots[i].real());
        CHECK(a.roots[i].imag() == b.roots[i].imag());
    }
    CHECK(std::is_sorted(a.roots.begin(), a.roots.end(), [](cplx x, cplx y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    }));
}

TEST_CASE("find_roots: near-coincident roots are flagged") {
    // (x - 1)(x - (1 + 1e-8)) x: gap 1e-8 on scale 1 is below the 1e-6 bound.
    const std::vector<cplx> roots = {cplx(1.0), cplx(1.0 + 1e-8), cplx(0.0)};
    const auto rl = find_roots({expand_monic(roots)});
    CHECK(!rl.close_pairs.empty());
}

TEST_CASE("find_roots: argument errors") {
    CHECK_THROWS_AS(find_roots({{cplx(1.0), cplx(2.0), cplx(0.0)}}),
                    bandedge::LeadingZero);
    CHECK_THROWS_AS(find_roots({{cplx(5.0)}}), bandedge::InvalidParams);
    CHECK_THROWS_AS(find_roots({{}}), bandedge::InvalidParams);
    const double nan = std::nan("");
    CHECK_THROWS_AS(find_roots({{cplx(nan), cplx(0.0), cplx(1.0)}}),
                    bandedge::LeadingZero);
}

TEST_CASE("build_quintic: coefficient reference points") {
    SystemParams p;

    SUBCASE("on the edge, gamma = 1") {
        p.gamma = 1.0;
        p.delta = 0.0;
        p.delta_g = 0.0;
        const auto q = build_quintic(p);
        REQUIRE(q.degree() == 5);
        const cplx e_m4 = std::polar(1.0, -std::numbers::pi / 4.0);
        CHECK(std::abs(q.coefficients[5] - cplx(1.0)) == 0.0);
        CHECK(std::abs(q.coefficients[4]) == 0.0);
        CHECK(std::abs(q.coefficients[3] - cplx(0.5)) <= 1e-16);
        CHECK(std::abs(q.coefficients[2] - e_m4) <= 1e-15);  // -i K0
        CHECK(std::abs(q.coefficients[1]) == 0.0);
        CHECK(std::abs(q.coefficients[0]) == 0.0);
    }

    SUBCASE("detuned, gamma = 0") {
        p.gamma = 0.0;
        p.delta = 0.0;
        p.delta_g = 1.0;
        const auto q = build_quintic(p);
        const cplx e_m4 = std::polar(1.0, -std::numbers::pi / 4.0);
        const cplx e_p4 = std::polar(1.0, std::numbers::pi / 4.0);
        CHECK(std::abs(q.coefficients[3] - cplx(0.0, -2.0)) <= 1e-15);
        CHECK(std::abs(q.coefficients[2] - e_m4) <= 1e-15);
        CHECK(std::abs(q.coefficients[1] - cplx(-1.0)) <= 1e-15);
        CHECK(std::abs(q.coefficients[0] + e_p4) <= 1e-15);  // -K0 delta'
    }
}

TEST_CASE("build_quintic: factorization identity over random parameters") {
    // [c0..c5] must equal the expansion of (x^2 - i d') (x^3 + (g/2 - i dg) x - i K0).
    std::mt19937 rng(8675309);
    for (int trial = 0; trial < 100; ++trial) {
        const SystemParams p = random_params(rng);
        const auto d = bandedge::derive(p);
        const auto q = build_quintic(p);

        const cplx idp(0.0, d.delta_prime);
        const cplx a(p.gamma / 2.0, -p.delta_g);
        const cplx b = cplx(0.0, -1.0) * d.k0;
        // (x^2 - idp)(x^3 + a x + b) = x^5 + (a - idp) x^3 + b x^2 - idp a x - idp b
        const std::vector<cplx> want = {-idp * b, -idp * a, b, a - idp, cplx(0.0),
                                        cplx(1.0)};
        double scale = 0.0;
        for (const cplx& c : want) scale = std::max(scale, std::abs(c));
        for (std::size_t k = 0; k < want.size(); ++k) {
            CHECK(std::abs(q.coefficients[k] - want[k]) <= 1e-13 * scale);
        }
    }
}

TEST_CASE("quintic roots: structure against independent formulas") {
    // Roots must be the Cardano roots of the cubic factor plus the pair
    // +-sqrt(i delta'); Vieta's sum (x^4 coefficient is zero) must vanish.
    std::mt19937 rng(31415);
    for (int trial = 0; trial < 60; ++trial) {
        const SystemParams p = random_params(rng);
        const auto d = bandedge::derive(p);
        if (std::abs(d.delta_prime) < 1e-3) continue;  // degenerate pair elsewhere

        const auto rl = find_roots(build_quintic(p));
        REQUIRE(rl.roots.size() == 5);

        const auto cb =
            oracle::cardano(cplx(p.gamma / 2.0, -p.delta_g), cplx(0.0, -1.0) * d.k0);
        const cplx sq = bandedge::principal_sqrt(cplx(0.0, d.delta_prime)).value;
        std::vector<cplx> want(cb.begin(), cb.end());
        want.push_back(sq);
        want.push_back(-sq);

        double max_mag = 0.0;
        for (const cplx& r : rl.roots) max_mag = std::max(max_mag, std::abs(r));
        CHECK(set_distance(rl.roots, want) <= 1e-9 * std::max(1.0, max_mag));

        cplx sum = 0.0;
        for (const cplx& r : rl.roots) sum += r;
        CHECK(std::abs(sum) <= 1e-10 * max_mag);

        for (double r : rl.residuals) CHECK(r < 1e-10);
    }
}
