#include "logsphere/potential.hpp"

#include <cmath>

#include "logsphere/errors.hpp"

namespace logsphere {

PotentialHandle PotentialHandle::canonical() { return PotentialHandle(); }

double PotentialHandle::eval(const Node* node, const PlanarPoint& x) {
    if (node == nullptr) {
        return std::log1p(abs2(x));
    }
    const MobiusMap& phi = node->phi;
    const std::complex<double> z(x.x1, x.x2);
    if (std::abs(phi.c * z + phi.d) < 1e-14) {
        // At the pole the transformed potential takes its liminf value,
        // which is finite thanks to the weak growth of the base potential.
        return liminf(node->base.get()) + std::log1p(abs2(x));
    }
    const PlanarPoint w = mobius_apply(phi, x);
    const double value = eval(node->base.get(), w) - std::log1p(abs2(w)) + std::log1p(abs2(x));
    if (!std::isfinite(value)) {
        throw PoleOfPotential("potential evaluation overflowed");
    }
    return value;
}

double PotentialHandle::liminf(const Node* node) {
    if (node == nullptr) {
        return 0.0; // canonical: V(x) - log(1+|x|^2) == 0
    }
    const MobiusMap& phi = node->phi;
    if (std::abs(phi.c) < 1e-14) {
        // Affine map: x -> inf is carried to w -> inf.
        return liminf(node->base.get());
    }
    // x -> inf is carried to the finite point a/c, where the bracketed
    // combination V(w) - log(1+|w|^2) is continuous.
    const std::complex<double> w = phi.a / phi.c;
    const PlanarPoint wp{w.real(), w.imag()};
    return eval(node->base.get(), wp) - std::log1p(abs2(wp));
}

double PotentialHandle::operator()(const PlanarPoint& x) const {
    return eval(node_.get(), x);
}

double PotentialHandle::liminf_at_infinity() const { return liminf(node_.get()); }

PotentialHandle transform_potential(const MobiusMap& phi, const PotentialHandle& v) {
    if (phi.is_identity()) {
        return v;
    }
    auto node = std::make_shared<const PotentialHandle::Node>(
        PotentialHandle::Node{phi, v.node_});
    return PotentialHandle(std::move(node));
}

double equilibrium_density(const PotentialHandle& v, const PlanarPoint& x) {
    if (v.is_canonical()) {
        const double s = 1.0 + abs2(x);
        return 1.0 / (M_PI * s * s);
    }
    const PotentialHandle::Node* node = v.node_.get();
    const PlanarPoint w = mobius_apply(node->phi, x); // throws PoleOfMap at the pole
    const PotentialHandle base =
        node->base ? PotentialHandle(node->base) : PotentialHandle::canonical();
    const double ratio = (1.0 + abs2(w)) / (1.0 + abs2(x));
    return equilibrium_density(base, w) * ratio * ratio;
}

EquilibriumData canonical_equilibrium() {
    EquilibriumData eq;
    eq.density = [](const PlanarPoint& x) {
        const double s = 1.0 + abs2(x);
        return 1.0 / (M_PI * s * s);
    };
    eq.support = SupportKind::WholePlane;
    eq.i_v = 0.5;
    eq.log_moment = 1.0;
    eq.entropy_integral = -(std::log(M_PI) + 2.0);
    // c_V = I_V - (1/2) * int V dmu_V = 1/2 - 1/2 = 0.
    eq.robin_constant = eq.i_v - 0.5 * eq.log_moment;
    eq.canonical = true;
    return eq;
}

double u_mu(const PlanarPoint& x, const EquilibriumData& eq) {
    if (!eq.canonical) {
        throw UnsupportedPotential("u_mu: closed form known for the canonical case only");
    }
    return -0.5 * std::log1p(abs2(x));
}

double zeta(const PlanarPoint& x, const EquilibriumData& eq) {
    if (!eq.canonical) {
        throw UnsupportedPotential("zeta: closed form known for the canonical case only");
    }
    (void)x; // support is the whole plane: Frostman equality everywhere
    return 0.0;
}

double alpha_v(const EquilibriumData& eq, double min_w1) {
    return min_w1 / M_PI - 0.5 * eq.entropy_integral;
}

} // namespace logsphere
