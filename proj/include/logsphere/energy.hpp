#pragma once

#include <cstddef>
#include <vector>

#include "logsphere/geometry.hpp"
#include "logsphere/potential.hpp"

namespace logsphere {

/// Exact decomposition of the planar Hamiltonian
///   w_n = n^2 I_V - (n/2) log n + renormalized_term + 2n sum zeta(x_i).
/// The renormalized term is defined by this rearrangement; reassembling the
/// four fields left to right reproduces w_n bitwise. To make that possible
/// under round-to-even, log_term may differ from the correctly rounded
/// -(n/2) log n by up to two ulps (still a faithful value of the term).
struct SplittingReport {
    std::size_t n = 0;
    double w_n = 0.0;
    double renormalized_term = 0.0;
    double zeta_sum = 0.0; // 2n * sum_i zeta(x_i)
    double i_v_term = 0.0; // n^2 * I_V
    double log_term = 0.0; // -(n/2) * log n, see note above

    double reassembled() const { return ((i_v_term + log_term) + renormalized_term) + zeta_sum; }
};

/// E_log = -sum_{i != j} log ||y_i - y_j|| over ordered pairs (each
/// unordered pair counted twice). Deterministic summation: per-i compensated
/// partial sums, j ascending, combined in i order.
/// Throws CoincidentPoints when a pair is closer than 1e-14.
double log_energy_sphere(const SphereConfiguration& cfg);

/// w_n = -sum_{i != j} log |x_i - x_j| + n sum_i V(x_i).
double hamiltonian_w(const PlanarConfiguration& cfg, const PotentialHandle& v);

/// wbar_n = -sum_{i != j} log |x_i - x_j| + (n-1) sum_i log(1 + |x_i|^2).
/// Equals the sphere energy of the stereographic images plus n(n-1) log 2.
double hamiltonian_wbar(const PlanarConfiguration& cfg);

/// Split w_n per the decomposition above. Requires canonical equilibrium
/// data (zeta has a closed form there); throws UnsupportedPotential
/// otherwise.
SplittingReport splitting_report(const PlanarConfiguration& cfg, const EquilibriumData& eq);

/// Tangent gradients of E_log: the Euclidean gradient
/// g_i = -2 sum_{j != i} (y_i - y_j)/||y_i - y_j||^2 projected onto the
/// tangent plane at y_i, i.e. g_i - (g_i . y_i) y_i.
std::vector<Vec3> grad_log_energy_sphere(const SphereConfiguration& cfg);

/// Residual of the change-of-variables identity
///   w_{n,V}(phi(y_1..y_n)) = w_{n,V_phi}(y_1..y_n)
///                            + sum log(1+|phi(y_i)|^2) - sum log(1+|y_i|^2).
/// The identity is exact for maps with unitary coefficient matrix (those
/// induced by sphere rotations); for other maps the returned residual
/// measures the defect. Throws PoleOfMap if a point hits the pole of phi.
double mobius_energy_identity_check(const PlanarConfiguration& cfg, const MobiusMap& phi,
                                    const PotentialHandle& v);

} // namespace logsphere
