#pragma once

#include <complex>
#include <cstddef>

#include "logsphere/geometry.hpp"

namespace logsphere {

/// Rank-2 lattice Z u + Z v.
struct BravaisLattice {
    PlanarPoint u;
    PlanarPoint v;
};

/// Shape of a lattice: modular parameter tau in the fundamental domain
/// (|Re tau| <= 1/2, |tau| >= 1, ties resolved to Re tau >= 0) and point
/// density m (points per unit area).
struct LatticeShape {
    std::complex<double> tau;
    double density = 1.0;
};

/// Closed-form constants used by the asymptotics bounds.
struct ReferenceConstants {
    double c_bhs = 0.0;           // 2 log2 + (1/2)log(2/3) + 3 log(sqrt(pi)/Gamma(1/3))
    double w_tri_density1 = 0.0;  // W of the triangular lattice at density 1
    double rsz_a = 0.0;
    double rsz_b = 0.0;
    double rsz_minw_lower = 0.0;  // lower bound for min W at density 1
    double rsz_c_lower = 0.0;     // induced lower bound for the order-n constant
};

/// Result of the fundamental-domain scan of W at density 1.
struct ScanResult {
    std::complex<double> argmin;
    double min_value = 0.0;
    /// Gap from the minimum to the best value outside the 3x3 grid
    /// neighborhoods of the argmin and of its Re-mirror column.
    double margin = 0.0;
    std::size_t argmin_row = 0; // index along Im
    std::size_t argmin_col = 0; // index along Re
};

/// tau of the triangular lattice, 1/2 + i sqrt(3)/2.
inline std::complex<double> tau_triangular() {
    return {0.5, std::sqrt(3.0) / 2.0};
}

/// Dedekind eta(tau) = q^{1/24} prod_{k>=1} (1 - q^k), q = e^{2 pi i tau},
/// with the continuous prefactor e^{i pi tau / 12} (principal branch on the
/// fundamental domain, and the T-shift identity eta(tau+1) = e^{i pi/12}
/// eta(tau) holds for all tau). Product truncated once |q|^k < 1e-18
/// (hard cap 200 terms). Throws DomainError for Im tau <= 0.
std::complex<double> dedekind_eta(std::complex<double> tau);

/// Gamma function for x > 0 via the Lanczos approximation (g = 7, 9
/// coefficients) with reflection below 1/2; relative error < 1e-13 on
/// [1/4, 10]. Throws DomainError for x <= 0.
double gamma_fn(double x);

/// Normalize any Im tau > 0 into the fundamental domain by T/S moves,
/// resolving boundary ties to Re tau >= 0.
std::complex<double> reduce_tau(std::complex<double> tau);

/// Lagrange-Gauss reduce the basis, form tau as the quotient of the longer
/// by the shorter vector (upper half-plane), normalize to the fundamental
/// domain; density = 1/|det[u v]|. Throws DegenerateBasis.
LatticeShape reduce_lattice(const BravaisLattice& basis);

/// W at the reference density 1/(2 pi):
/// W_{1/(2pi)}(tau) = -(1/2) log( sqrt(2 pi Im tau) |eta(tau)|^2 ).
double w_reference_density(std::complex<double> tau);

/// W at density 1: W_1(tau) = 2 pi W_{1/(2pi)}(tau) - (pi/2) log(2 pi).
double w_density_one(std::complex<double> tau);

/// W at the shape's density via the scaling law
/// W_m(tau) = m (W_1(tau) - (pi/2) log m). Throws DomainError for
/// Im tau <= 0 or density <= 0.
double w_lattice(const LatticeShape& shape);

/// | |eta(tau_tri)|^4 - Gamma(1/3)^6 sqrt(3) / (16 pi^4) |
/// (Chowla-Selberg identity; expected < 1e-12).
double chowla_selberg_check();

ReferenceConstants reference_constants();

/// Evaluate W_1 over a grid_re x grid_im grid of the truncated fundamental
/// domain {|Re tau| <= 1/2, |tau| >= 1, sqrt(3)/2 <= Im tau <= im_max}.
/// Grid rows are evaluated concurrently; the argmin scan is sequential with
/// ties resolved to the lowest row, then lowest column. Requires
/// grid_re, grid_im >= 32 and im_max >= 2 (DomainError otherwise).
ScanResult minimality_scan(std::size_t grid_re, std::size_t grid_im, double im_max);

} // namespace logsphere
