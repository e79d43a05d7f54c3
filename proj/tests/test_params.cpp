#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "bandedge/errors.hpp"
#include "bandedge/params.hpp"
#include "doctest.h"

using bandedge::DerivedParams;
using bandedge::SystemParams;
using bandedge::TimeGrid;

TEST_CASE("derive: band-edge detuning and memory amplitude") {
    SystemParams p;
    p.beta = 1.0;
    p.delta = 0.0;
    p.delta_g = 0.0;

    DerivedParams d = bandedge::derive(p);
    CHECK(d.delta_prime == 0.0);
    // k0 = e^{+i pi/4} at beta = 1: both components sqrt(2)/2.
    const double half_sqrt2 = std::sqrt(2.0) / 2.0;
    CHECK(d.k0.real() == doctest::Approx(half_sqrt2).epsilon(1e-15));
    CHECK(d.k0.imag() == doctest::Approx(half_sqrt2).epsilon(1e-15));

    p.delta = 0.5;
    p.delta_g = 0.5;
    CHECK(bandedge::derive(p).delta_prime == 0.0);

    p.beta = 4.0;
    d = bandedge::derive(p);
    CHECK(std::abs(d.k0) == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(std::arg(d.k0) == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-15));
}

TEST_CASE("derive: pure function, repeat calls bit-identical") {
    SystemParams p;
    p.beta = 2.7;
    p.gamma = 0.31;
    p.delta = -0.4;
    p.delta_g = 1.9;

    const DerivedParams a = bandedge::derive(p);
    const DerivedParams b = bandedge::derive(p);
    CHECK(a.delta_prime == b.delta_prime);
    CHECK(a.k0.real() == b.k0.real());
    CHECK(a.k0.imag() == b.k0.imag());
}

TEST_CASE("validate: parameter domain") {
    SystemParams p;
    CHECK_NOTHROW(bandedge::validate(p));

    SUBCASE("beta must be positive") {
        p.beta = 0.0;
        CHECK_THROWS_AS(bandedge::validate(p), bandedge::InvalidParams);
        p.beta = -1.0;
        CHECK_THROWS_AS(bandedge::validate(p), bandedge::InvalidParams);
    }
    SUBCASE("gamma must be nonnegative, zero allowed") {
        p.gamma = -0.1;
        CHECK_THROWS_AS(bandedge::validate(p), bandedge::InvalidParams);
        p.gamma = 0.0;
        CHECK_NOTHROW(bandedge::validate(p));
    }
    SUBCASE("omega_rabi must be nonnegative, zero allowed (probe off)") {
        p.omega_rabi = -1e-9;
        CHECK_THROWS_AS(bandedge::validate(p), bandedge::InvalidParams);
        p.omega_rabi = 0.0;
        CHECK_NOTHROW(bandedge::validate(p));
    }
    SUBCASE("chi_prefactor must be positive") {
        p.chi_prefactor = 0.0;
        CHECK_THROWS_AS(bandedge::validate(p), bandedge::InvalidParams);
    }
    SUBCASE("non-finite values rejected") {
        p.delta = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(bandedge::validate(p), bandedge::InvalidParams);
        p.delta = 0.0;
        p.delta_g = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(bandedge::validate(p), bandedge::InvalidParams);
    }
    SUBCASE("detunings may take either sign") {
        p.delta = -3.0;
        p.delta_g = -7.5;
        CHECK_NOTHROW(bandedge::validate(p));
    }
}

TEST_CASE("validate: time grid domain and accessors") {
    TimeGrid g;
    CHECK_NOTHROW(bandedge::validate(g));
    CHECK(g.step() == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(g.size() == 5001);
    CHECK(g.time_at(0) == 0.0);
    CHECK(g.time_at(5000) == 50.0);

    TimeGrid odd{7.0, 350};
    CHECK(odd.time_at(0) == 0.0);
    CHECK(odd.time_at(350) == 7.0);
    CHECK(odd.time_at(1) == doctest::Approx(0.02).epsilon(1e-15));

    TimeGrid bad_t{0.0, 100};
    CHECK_THROWS_AS(bandedge::validate(bad_t), bandedge::InvalidParams);
    TimeGrid bad_n{10.0, 1};
    CHECK_THROWS_AS(bandedge::validate(bad_n), bandedge::InvalidParams);
    TimeGrid inf_t{std::numeric_limits<double>::infinity(), 100};
    CHECK_THROWS_AS(bandedge::validate(inf_t), bandedge::InvalidParams);
}

TEST_CASE("param_warnings: perturbative probe bound") {
    SystemParams p;  // omega_rabi = 0.01, gamma = 0.2, beta = 1
    CHECK(bandedge::param_warnings(p).empty());

    // Bound is 0.1*min(beta, gamma) when gamma > 0.
    p.omega_rabi = 0.021;
    CHECK(bandedge::param_warnings(p).size() == 1);
    p.omega_rabi = 0.019;
    CHECK(bandedge::param_warnings(p).empty());

    // gamma = 0 falls back to 0.1*beta.
    p.gamma = 0.0;
    p.omega_rabi = 0.09;
    CHECK(bandedge::param_warnings(p).empty());
    p.omega_rabi = 0.11;
    CHECK(bandedge::param_warnings(p).size() == 1);
}

TEST_CASE("reduced: rates rescaled to beta = 1") {
    SystemParams p;
    p.beta = 4.0;
    p.gamma = 0.8;
    p.delta = 0.4;
    p.delta_g = 1.2;
    p.omega_rabi = 0.04;
    p.chi_prefactor = 2.5;

    const SystemParams r = bandedge::reduced(p);
    CHECK(r.beta == 1.0);
    CHECK(r.gamma == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(r.delta == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(r.delta_g == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(r.omega_rabi == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(r.chi_prefactor == 2.5);

    // Already-reduced params are a fixed point.
    const SystemParams rr = bandedge::reduced(r);
    CHECK(rr.gamma == r.gamma);
    CHECK(rr.delta == r.delta);
    CHECK(rr.delta_g == r.delta_g);
    CHECK(rr.omega_rabi == r.omega_rabi);
}
