#pragma once

#include <cmath>
#include <cstddef>

#include "logsphere/kahan.hpp"

namespace logsphere {

/// Adaptive Gauss-Kronrod (G7, K15) quadrature.
///
/// Intervals are bisected until the local G7/K15 discrepancy fits into a
/// budget proportional to the interval length, so endpoint singularities
/// (e.g. log) are resolved by geometric refinement. Abscissae are interior,
/// hence integrands need never be evaluated at a or b. Deterministic:
/// left-to-right depth-first traversal with compensated accumulation.
namespace detail_gk {

// K15 abscissae (positive half) and weights; G7 weights sit on the odd
// abscissae. Standard 15-point Kronrod extension of 7-point Gauss-Legendre.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <class F>
void gk15(F&& f, double a, double b, double& kronrod, double& gauss) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resg = wg[3] * fc;
    double resk = wgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        resk += wgk[j] * fsum;
        if (j % 2 == 1) {
            resg += wg[j / 2] * fsum;
        }
    }
    kronrod = resk * half;
    gauss = resg * half;
}

template <class F>
void adapt(F&& f, double a, double b, double tol, int depth, int max_depth,
           KahanSum& acc) {
    double k15 = 0.0;
    double g7 = 0.0;
    gk15(f, a, b, k15, g7);
    const double err = std::fabs(k15 - g7);
    if (err <= tol || depth >= max_depth) {
        acc.add(k15);
        return;
    }
    const double mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * tol, depth + 1, max_depth, acc);
    adapt(f, mid, b, 0.5 * tol, depth + 1, max_depth, acc);
}

} // namespace detail_gk

/// Integrate f over [a, b] to absolute tolerance abs_tol.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol, int max_depth = 60) {
    KahanSum acc;
    detail_gk::adapt(f, a, b, abs_tol, 0, max_depth, acc);
    return acc.value();
}

/// Integrate f over [0, infinity) via the substitution r = tan(theta),
/// which maps the half-line onto [0, pi/2) exactly:
/// int_0^inf f(r) dr = int_0^{pi/2} f(tan t) / cos^2 t dt.
template <class F>
double integrate_radial(F&& f, double abs_tol, int max_depth = 60) {
    auto g = [&f](double t) {
        const double c = std::cos(t);
        const double r = std::tan(t);
        return f(r) / (c * c);
    };
    return integrate(g, 0.0, std::asin(1.0), abs_tol, max_depth);
}

} // namespace logsphere
