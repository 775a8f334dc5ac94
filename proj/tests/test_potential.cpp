#include <doctest.h>

#include <cmath>
#include <complex>

#include "logsphere/errors.hpp"
#include "logsphere/potential.hpp"
#include "logsphere/quadrature.hpp"
#include "logsphere/rng.hpp"
#include "oracles.hpp"

using namespace logsphere;

namespace {

MobiusMap random_map(Rng& rng) {
    auto coeff = [&rng]() {
        return std::complex<double>(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    };
    for (;;) {
        try {
            return MobiusMap(coeff(), coeff(), coeff(), coeff());
        } catch (const DomainError&) {
        }
    }
}

// Canonical equilibrium mass between radius 0 and r, as a weight for radial
// integrals: dmu = (2 r / (1 + r^2)^2) dr.
double mu_weight(double r) { return 2.0 * r / ((1.0 + r * r) * (1.0 + r * r)); }

} // namespace

TEST_CASE("canonical potential closed forms") {
    const PotentialHandle v = PotentialHandle::canonical();
    CHECK(v.is_canonical());
    CHECK(v({0.0, 0.0}) == 0.0);
    CHECK(v({1.0, 1.0}) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(v({3.0, 4.0}) == doctest::Approx(std::log(26.0)).epsilon(1e-15));
    CHECK(v.liminf_at_infinity() == 0.0);
}

TEST_CASE("canonical equilibrium data matches the closed forms") {
    const EquilibriumData eq = canonical_equilibrium();
    CHECK(eq.canonical);
    CHECK(eq.support == SupportKind::WholePlane);
    CHECK(eq.i_v == 0.5);
    CHECK(eq.log_moment == 1.0);
    CHECK(std::fabs(eq.entropy_integral - oracles::kEntropyIntegral) <= 1e-14);
    CHECK(eq.robin_constant == 0.0);
    CHECK(eq.density({0.0, 0.0}) == doctest::Approx(1.0 / M_PI).epsilon(1e-15));
    const double r2 = 2.25;
    CHECK(eq.density({1.5, 0.0}) ==
          doctest::Approx(1.0 / (M_PI * (1.0 + r2) * (1.0 + r2))).epsilon(1e-15));
}

TEST_CASE("density normalization, log moment and entropy by quadrature") {
    const EquilibriumData eq = canonical_equilibrium();
    const double mass = integrate_radial(
        [&eq](double r) { return 2.0 * M_PI * r * eq.density({r, 0.0}); }, 1e-11);
    CHECK(std::fabs(mass - 1.0) <= 1e-10);

    const double logm = integrate_radial(
        [](double r) { return std::log1p(r * r) * mu_weight(r); }, 1e-11);
    CHECK(std::fabs(logm - eq.log_moment) <= 1e-10);

    const double entropy = integrate_radial(
        [&eq](double r) {
            const double m = eq.density({r, 0.0});
            return 2.0 * M_PI * r * m * std::log(m);
        },
        1e-11);
    CHECK(std::fabs(entropy - eq.entropy_integral) <= 1e-10);
}

TEST_CASE("logarithmic potential of the equilibrium measure by quadrature") {
    // Circular averaging reduces U to a radial integral with a kink:
    // U(x) = -int log(max(|x|, r)) dmu(r).
    const EquilibriumData eq = canonical_equilibrium();
    for (const double rx : {0.4, 1.0, 2.5}) {
        const double quad = -integrate_radial(
            [rx](double r) { return std::log(std::max(rx, r)) * mu_weight(r); }, 1e-10);
        CHECK(std::fabs(quad - u_mu({rx, 0.0}, eq)) <= 1e-9);
    }
}

TEST_CASE("equilibrium energy by nested quadrature") {
    // I_V = int (U + V) dmu with U evaluated by the inner radial integral.
    const EquilibriumData eq = canonical_equilibrium();
    const double i_v = integrate_radial(
        [](double rx) {
            const double u = -integrate_radial(
                [rx](double r) { return std::log(std::max(rx, r)) * mu_weight(r); }, 1e-9);
            return (u + std::log1p(rx * rx)) * mu_weight(rx);
        },
        1e-6);
    CHECK(std::fabs(i_v - eq.i_v) <= 1e-4);
}

TEST_CASE("Frostman equality holds pointwise on the whole plane") {
    const EquilibriumData eq = canonical_equilibrium();
    const PotentialHandle v = PotentialHandle::canonical();
    Rng rng(21);
    for (int k = 0; k < 200; ++k) {
        const double scale = std::pow(10.0, 3.0 * rng.uniform() - 1.0);
        const PlanarPoint x{scale * (2.0 * rng.uniform() - 1.0),
                            scale * (2.0 * rng.uniform() - 1.0)};
        const double res = u_mu(x, eq) + 0.5 * v(x) - eq.robin_constant;
        CHECK(std::fabs(res) <= 1e-13);
        CHECK(zeta(x, eq) == 0.0);
    }
}

TEST_CASE("transforming by the identity map is a no-op") {
    const PotentialHandle v = PotentialHandle::canonical();
    const PotentialHandle same = transform_potential(MobiusMap::identity(), v);
    CHECK(same.is_canonical());
}

TEST_CASE("canonical potential is invariant under moebius pullback") {
    const PotentialHandle v = PotentialHandle::canonical();
    Rng rng(22);
    for (int k = 0; k < 40; ++k) {
        const MobiusMap phi = (k == 0) ? MobiusMap::inversion() : random_map(rng);
        const PotentialHandle w = transform_potential(phi, v);
        CHECK_FALSE(w.is_canonical());
        CHECK(std::fabs(w.liminf_at_infinity()) <= 1e-12);
        for (int j = 0; j < 25; ++j) {
            const PlanarPoint x{4.0 * (rng.uniform() - 0.5), 4.0 * (rng.uniform() - 0.5)};
            CHECK(std::fabs(w(x) - v(x)) <= 1e-12);
        }
        // At the pole of phi the liminf branch must agree with V as well.
        if (std::abs(phi.c) > 1e-7) {
            const std::complex<double> pole = -phi.d / phi.c;
            const PlanarPoint xp{pole.real(), pole.imag()};
            CHECK(std::fabs(w(xp) - v(xp)) <= 1e-12);
        }
    }
}

TEST_CASE("pullback density collapses to the canonical density") {
    const PotentialHandle v = PotentialHandle::canonical();
    Rng rng(23);
    for (int k = 0; k < 25; ++k) {
        const MobiusMap phi = random_map(rng);
        const MobiusMap psi = random_map(rng);
        const PotentialHandle w = transform_potential(psi, transform_potential(phi, v));
        for (int j = 0; j < 20; ++j) {
            const PlanarPoint x{4.0 * (rng.uniform() - 0.5), 4.0 * (rng.uniform() - 0.5)};
            const double canonical = 1.0 / (M_PI * (1.0 + abs2(x)) * (1.0 + abs2(x)));
            try {
                const double d = equilibrium_density(w, x);
                CHECK(std::fabs(d - canonical) <= 1e-10 * (1.0 + d));
            } catch (const PoleOfMap&) {
                continue;
            }
        }
    }
}

TEST_CASE("u_mu and zeta require canonical data") {
    EquilibriumData eq = canonical_equilibrium();
    eq.canonical = false;
    CHECK_THROWS_AS((void)u_mu({1.0, 0.0}, eq), UnsupportedPotential);
    CHECK_THROWS_AS((void)zeta({1.0, 0.0}, eq), UnsupportedPotential);
}

TEST_CASE("alpha_v assembles the expansion constant") {
    const EquilibriumData eq = canonical_equilibrium();
    CHECK(std::fabs(alpha_v(eq, oracles::kW1Triangular) - oracles::kAlphaV) <= 1e-12);
    // min_w1 = 0 isolates the entropy part.
    CHECK(alpha_v(eq, 0.0) ==
          doctest::Approx(-0.5 * oracles::kEntropyIntegral).epsilon(1e-15));
    // Full chain to the conjectural expansion constant.
    const double c = alpha_v(eq, oracles::kW1Triangular) - 1.0 + std::log(2.0);
    CHECK(std::fabs(c - oracles::kCBhs) <= 1e-9);
}
