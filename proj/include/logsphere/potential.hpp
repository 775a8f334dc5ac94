#pragma once

#include <functional>
#include <memory>

#include "logsphere/geometry.hpp"

namespace logsphere {

/// External-field potential on the plane. Supported kinds: the canonical
/// potential V(x) = log(1 + |x|^2) and its Moebius pullbacks
/// V_phi(x) = V(phi(x)) - log(1+|phi(x)|^2) + log(1+|x|^2).
/// Every handle satisfies the weak growth condition
/// liminf_{|x|->inf} (V(x) - log(1+|x|^2)) > -inf by construction.
class PotentialHandle {
public:
    /// V(x) = log(1 + |x|^2).
    static PotentialHandle canonical();

    /// Evaluate V at x. At the (single possible) pole of a transformed
    /// potential the value is the liminf, which is finite:
    /// V_phi(-d/c) = L_base + log(1 + |d/c|^2) where L_base is the base
    /// potential's value of liminf (V - log(1+|x|^2)) at infinity.
    double operator()(const PlanarPoint& x) const;

    bool is_canonical() const { return node_ == nullptr; }

    /// liminf_{|x|->inf} (V(x) - log(1+|x|^2)); 0 for the canonical kind.
    double liminf_at_infinity() const;

private:
    struct Node {
        MobiusMap phi;
        std::shared_ptr<const Node> base; // nullptr = canonical
    };

    PotentialHandle() = default;
    explicit PotentialHandle(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    static double eval(const Node* node, const PlanarPoint& x);
    static double liminf(const Node* node);

    std::shared_ptr<const Node> node_; // nullptr = canonical

    friend PotentialHandle transform_potential(const MobiusMap& phi,
                                               const PotentialHandle& v);
    friend double equilibrium_density(const PotentialHandle& v, const PlanarPoint& x);
};

/// Pull V back along phi: V_phi(x) = V(phi(x)) - log(1+|phi(x)|^2)
/// + log(1+|x|^2). The identity map returns v unchanged.
PotentialHandle transform_potential(const MobiusMap& phi, const PotentialHandle& v);

/// Equilibrium-measure density of a supported potential, via the pushforward
/// law m_{V_phi}(x) = m_V(phi(x)) * ((1+|phi(x)|^2)/(1+|x|^2))^2 applied
/// recursively down to the canonical m_V(x) = 1/(pi (1+|x|^2)^2).
/// Throws PoleOfMap if x is a pole of one of the stacked maps.
double equilibrium_density(const PotentialHandle& v, const PlanarPoint& x);

enum class SupportKind { WholePlane, CompactRegion };

/// Closed-form data of the equilibrium measure mu_V.
struct EquilibriumData {
    std::function<double(const PlanarPoint&)> density; // m_V
    SupportKind support = SupportKind::WholePlane;
    double i_v = 0.0;              // I_V(mu_V)
    double robin_constant = 0.0;   // c_V = I_V - int (V/2) dmu_V
    double entropy_integral = 0.0; // int m_V log m_V dx
    double log_moment = 0.0;       // int log(1+|x|^2) dmu_V
    bool canonical = false;
};

/// Canonical equilibrium data: m_V(x) = 1/(pi (1+|x|^2)^2) on the whole
/// plane, I_V = 1/2, log-moment = 1, entropy integral = -(log pi + 2),
/// Robin constant 0.
EquilibriumData canonical_equilibrium();

/// Logarithmic potential U^{mu_V}(x) = -int log|x-y| dmu_V(y); in the
/// canonical case -1/2 log(1+|x|^2). Throws UnsupportedPotential for
/// non-canonical data.
double u_mu(const PlanarPoint& x, const EquilibriumData& eq);

/// zeta(x) = U^{mu_V}(x) + V(x)/2 - c_V. The canonical support is the whole
/// plane, so the Frostman equality makes zeta identically 0; kept as an
/// explicit operation so the splitting decomposition reads verbatim.
/// Throws UnsupportedPotential for non-canonical data.
double zeta(const PlanarPoint& x, const EquilibriumData& eq);

/// alpha_V = (1/pi) * min_w1 - (1/2) * entropy_integral, where min_w1 is the
/// caller's value for the minimal renormalized lattice energy at density 1.
double alpha_v(const EquilibriumData& eq, double min_w1);

} // namespace logsphere
