#pragma once

// Frozen expected values for the test suite. Each constant was computed
// independently at 40-digit working precision and rounded to the nearest
// double; tests compare against these literals, never against values
// produced by the code under test.

#include <cmath>
#include <vector>

#include "logsphere/geometry.hpp"

namespace oracles {

// Closed-form reference constants.
inline constexpr double kCBhs = -0.055605304943392518;
inline constexpr double kW1Triangular = -4.150412807678963;
inline constexpr double kW1Square = -4.1171606123311353;
inline constexpr double kWRefTriangular = -0.2010894476116826;
inline constexpr double kRszA = 5.6872602329532809;
inline constexpr double kRszB = 0.14953807167129968;
inline constexpr double kRszMinWLower = -4.6842706694670282;
inline constexpr double kRszCLower = -0.22553754016747316;

// Special values of eta and Gamma.
inline constexpr double kEtaTriangularAbs4 = 0.41078790671527343; // |eta(tau_tri)|^4
inline constexpr double kEtaIAbs = 0.76822542232605662;           // |eta(i)|
inline constexpr double kGammaThird = 2.6789385347077475;         // Gamma(1/3)
inline constexpr double kGammaQuarter = 3.6256099082219082;       // Gamma(1/4)

// Equilibrium-measure data for the canonical potential.
inline constexpr double kEntropyIntegral = -3.1447298858494004; // -(log pi + 2)
inline constexpr double kAlphaV = 0.25124751449666216;

// Sphere energies of exact extremal configurations.
inline constexpr double kEnergyAntipodal = -1.3862943611198906;   // -2 log 2
inline constexpr double kEnergyTriangle = -3.2958368660043291;    // -3 log 3
inline constexpr double kEnergyTetrahedron = -5.8849755180703571; // -6 log(8/3)
inline constexpr double kEnergyOctahedron = -12.476649250079015;  // -18 log 2
inline constexpr double kEnergyIcosahedron = -43.212290460889768;

// Expansion residual r_2 of the antipodal pair: (3 log 2 - 2) / 2.
inline constexpr double kResidualN2 = 0.039720770839917964;
// Renormalized term of the splitting of {(1,0), (-1,0)}: 3 log 2 - 2.
inline constexpr double kRenormN2 = 0.079441541679835928;

inline logsphere::SphereConfiguration antipodal_pair() {
    return {{{0.0, 0.0, 1.0}, {0.0, 0.0, -1.0}}, true};
}

/// Equilateral triangle on the equator (side sqrt 3).
inline logsphere::SphereConfiguration equatorial_triangle() {
    const double c = std::cos(2.0 * M_PI / 3.0);
    const double s = std::sin(2.0 * M_PI / 3.0);
    return {{{1.0, 0.0, 0.0}, {c, s, 0.0}, {c, -s, 0.0}}, false};
}

inline logsphere::SphereConfiguration tetrahedron() {
    const double r = 1.0 / std::sqrt(3.0);
    return {{{r, r, r}, {r, -r, -r}, {-r, r, -r}, {-r, -r, r}}, false};
}

inline logsphere::SphereConfiguration octahedron() {
    return {{{1.0, 0.0, 0.0},
             {-1.0, 0.0, 0.0},
             {0.0, 1.0, 0.0},
             {0.0, -1.0, 0.0},
             {0.0, 0.0, 1.0},
             {0.0, 0.0, -1.0}},
            true};
}

inline logsphere::SphereConfiguration icosahedron() {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    const double s = 1.0 / std::sqrt(1.0 + phi * phi);
    const double a = s;
    const double b = s * phi;
    logsphere::SphereConfiguration cfg;
    cfg.points = {{0.0, a, b},  {0.0, a, -b},  {0.0, -a, b},  {0.0, -a, -b},
                  {a, b, 0.0},  {a, -b, 0.0},  {-a, b, 0.0},  {-a, -b, 0.0},
                  {b, 0.0, a},  {-b, 0.0, a},  {b, 0.0, -a},  {-b, 0.0, -a}};
    return cfg;
}

} // namespace oracles
