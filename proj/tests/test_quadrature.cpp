#include <doctest.h>

#include <cmath>

#include "logsphere/quadrature.hpp"

using namespace logsphere;

TEST_CASE("polynomials are integrated to machine precision") {
    const double v = integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-14);
    CHECK(std::fabs(v - 1.0 / 3.0) <= 1e-14);
    const double w = integrate([](double x) { return x * x * x - 2.0 * x; }, -1.0, 3.0, 1e-13);
    CHECK(w == doctest::Approx(12.0).epsilon(1e-13));
}

TEST_CASE("endpoint log singularity is resolved by adaptive refinement") {
    const double v = integrate([](double x) { return std::log(x); }, 0.0, 1.0, 1e-11);
    CHECK(std::fabs(v + 1.0) <= 1e-10);
}

TEST_CASE("smooth trig integrals") {
    const double s = integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-13);
    CHECK(std::fabs(s - 2.0) <= 1e-12);
    const double c = integrate([](double x) { return std::cos(10.0 * x); }, 0.0, 2.0 * M_PI, 1e-11);
    CHECK(std::fabs(c) <= 1e-10);
}

TEST_CASE("radial transform integrates over the half line") {
    // total mass of the canonical equilibrium density
    const double mass = integrate_radial(
        [](double r) { return 2.0 * r / ((1.0 + r * r) * (1.0 + r * r)); }, 1e-11);
    CHECK(std::fabs(mass - 1.0) <= 1e-10);
    // int_0^inf e^{-r} dr = 1
    const double expint = integrate_radial([](double r) { return std::exp(-r); }, 1e-11);
    CHECK(std::fabs(expint - 1.0) <= 1e-10);
    // int_0^inf r e^{-r^2} dr = 1/2
    const double g = integrate_radial([](double r) { return r * std::exp(-r * r); }, 1e-11);
    CHECK(std::fabs(g - 0.5) <= 1e-10);
}
