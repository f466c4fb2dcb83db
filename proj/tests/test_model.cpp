#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "kvlab/model.hpp"

using namespace kvlab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("derived properties of the unit-period system") {
    OscillatorParams p(1.0, 0.0, 1.0 / (4.0 * kPi * kPi));
    auto d = derived_properties(p);
    CHECK(d.Tn == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.omega_n == doctest::Approx(2.0 * kPi).epsilon(1e-14));
    CHECK(d.k == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));
    CHECK(d.xi == 0.0);
}

TEST_CASE("derived properties of the unit system and the damped reference case") {
    OscillatorParams unit(1.0, 0.0, 1.0);
    CHECK(unit.omega_n() == doctest::Approx(1.0));
    CHECK(unit.Tn() == doctest::Approx(2.0 * kPi));
    CHECK(unit.xi() == 0.0);

    OscillatorParams damped(1.0, 0.2 * kPi, 1.0 / (4.0 * kPi * kPi));
    CHECK(damped.xi() == doctest::Approx(0.05).epsilon(1e-14));
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(OscillatorParams(0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(OscillatorParams(1.0, 0.0, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(OscillatorParams(1.0, -0.5, 1.0), std::invalid_argument);
    OscillatorParams bad;
    bad.m = -1.0;
    CHECK_THROWS_AS(derived_properties(bad), std::invalid_argument);
}

TEST_CASE("(m, Tn, xi) constructor round-trips") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> um(0.1, 10.0), ut(0.05, 20.0), ux(0.0, 0.9);
    for (int i = 0; i < 200; ++i) {
        double m = um(rng), Tn = ut(rng), xi = ux(rng);
        OscillatorParams p = OscillatorParams::from_period(m, Tn, xi);
        CHECK(p.Tn() == doctest::Approx(Tn).epsilon(1e-12));
        CHECK(p.xi() == doctest::Approx(xi).epsilon(1e-12));
        CHECK(p.m == m);
    }
}

TEST_CASE("dependent initial impulse") {
    OscillatorParams p(1.0, 0.0, 1.0);
    CHECK(dependent_initial_impulse(p, {0.0, 0.0}, 0.0) == 0.0);
    OscillatorParams p2(2.0, 0.0, 1.0);
    CHECK(dependent_initial_impulse(p2, {0.0, 1.0}, 0.0) == -2.0);
    OscillatorParams p3(1.0, 0.2 * kPi, 1.0);
    CHECK(dependent_initial_impulse(p3, {1.0, 0.0}, 0.0) ==
          doctest::Approx(-0.2 * kPi).epsilon(1e-15));
}

TEST_CASE("dependent initial impulse is linear with coefficients (-c, -m, +1)") {
    OscillatorParams p(2.5, 0.7, 0.3);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ur(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        double u0 = ur(rng), v0 = ur(rng), j0 = ur(rng);
        double J = dependent_initial_impulse(p, {u0, v0}, j0);
        CHECK(J == doctest::Approx(-p.c * u0 - p.m * v0 + j0).epsilon(1e-14));
    }
}

TEST_CASE("sample_forcing: zero, sinusoid, ground acceleration") {
    OscillatorParams p(2.0, 0.0, 1.0);

    SampledForce zero = sample_forcing(ZeroForcing{}, p, 0.1, 10, 0.25);
    for (double f : zero.f) CHECK(f == 0.0);
    for (double j : zero.jhat) CHECK(j == 0.25);

    SampledForce sin = sample_forcing(SinusoidForcing{100.0, 10.0}, p, 0.01, 5);
    CHECK(sin.f[0] == 0.0);
    CHECK(sin.f[1] == doctest::Approx(100.0 * std::sin(0.1)).epsilon(1e-15));

    TabulatedForcing tab;
    tab.times = {0.0, 1.0};
    tab.values = {1.0, 1.0};
    tab.kind = RecordKind::GroundAcceleration;
    tab.scale = 1.0;
    SampledForce ga = sample_forcing(tab, p, 0.25, 4);
    for (double f : ga.f) CHECK(f == doctest::Approx(-2.0));
}

TEST_CASE("sample_forcing rejects short records naming coverage") {
    OscillatorParams p(1.0, 0.0, 1.0);
    TabulatedForcing tab;
    tab.times = {0.0, 0.5};
    tab.values = {0.0, 1.0};
    CHECK_THROWS_WITH_AS(sample_forcing(tab, p, 0.2, 5), doctest::Contains("0.5"),
                         std::out_of_range);
}

TEST_CASE("impulse accumulation examples") {
    // constant force
    auto jhat = accumulate_impulse({3, 3, 3, 3, 3}, 0.5, 0.0);
    CHECK(jhat[4] == doctest::Approx(6.0));
    // trapezoid exact for a linear ramp f = t on [0, 1]
    auto ramp = accumulate_impulse({0.0, 0.5, 1.0}, 0.5, 0.0);
    CHECK(ramp[2] == doctest::Approx(0.5).epsilon(1e-16));
    // sin(10 t) at h = 1e-3: trapezoid truncation is (h^2/12)|f'(1)-f'(0)| ~ 1.5e-6
    std::size_t n = 1000;
    std::vector<double> f(n + 1);
    for (std::size_t k = 0; k <= n; ++k) f[k] = std::sin(10.0 * 1e-3 * double(k));
    auto js = accumulate_impulse(f, 1e-3, 0.0);
    double analytic = (1.0 - std::cos(10.0)) / 10.0;
    CHECK(std::abs(js[n] - analytic) < 2e-6);
}

TEST_CASE("impulse accumulation is exact for piecewise-linear nodal forces") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> ur(-2.0, 2.0);
    double h = 0.125;  // power of two keeps the check at machine precision
    std::vector<double> f(65);
    for (auto& v : f) v = ur(rng);
    auto jhat = accumulate_impulse(f, h, 0.5);
    // independent oracle: exact integral of the piecewise-linear interpolant
    double acc = 0.5;
    for (std::size_t k = 1; k < f.size(); ++k) {
        acc += h * 0.5 * (f[k - 1] + f[k]);
        CHECK(jhat[k] == doctest::Approx(acc).epsilon(1e-15));
    }
}

TEST_CASE("forcing_value covers all variants") {
    OscillatorParams p(3.0, 0.0, 1.0);
    CHECK(forcing_value(ZeroForcing{}, p, 2.0) == 0.0);
    CHECK(forcing_value(SinusoidForcing{2.0, 5.0}, p, 0.3) ==
          doctest::Approx(2.0 * std::sin(1.5)));
    TabulatedForcing tab;
    tab.times = {0.0, 1.0, 2.0};
    tab.values = {0.0, 4.0, 0.0};
    tab.scale = 0.5;
    CHECK(forcing_value(tab, p, 0.5) == doctest::Approx(1.0));
    tab.kind = RecordKind::GroundAcceleration;
    CHECK(forcing_value(tab, p, 0.5) == doctest::Approx(-3.0));
}
