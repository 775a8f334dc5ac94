#include "logsphere/geometry.hpp"

#include <cmath>

#include "logsphere/errors.hpp"

namespace logsphere {

MobiusMap::MobiusMap(std::complex<double> a_, std::complex<double> b_,
                     std::complex<double> c_, std::complex<double> d_)
    : a(a_), b(b_), c(c_), d(d_) {
    const std::complex<double> det = a * d - b * c;
    if (std::abs(det) < 1e-14) {
        throw DomainError("MobiusMap: ad - bc vanishes, not a Moebius map");
    }
    // Normalize the determinant to 1 (up to the global sign ambiguity of
    // the coefficient matrix, which does not affect the map).
    const std::complex<double> s = std::sqrt(det);
    a /= s;
    b /= s;
    c /= s;
    d /= s;
}

bool MobiusMap::is_identity(double tol) const {
    // After det-normalization the identity is (a,b,c,d) = +-(1,0,0,1).
    const double sign = (a.real() >= 0.0) ? 1.0 : -1.0;
    return std::abs(a - sign) < tol && std::abs(b) < tol && std::abs(c) < tol &&
           std::abs(d - sign) < tol;
}

SpherePoint stereographic(const PlanarPoint& x) {
    const double s = abs2(x);
    const double denom = 1.0 + s;
    return {2.0 * x.x1 / denom, 2.0 * x.x2 / denom, (s - 1.0) / denom};
}

PlanarPoint inverse_stereographic(const SpherePoint& y) {
    const double denom = 1.0 - y.z;
    if (std::abs(denom) < 1e-12) {
        throw NorthPoleNotRepresentable(
            "inverse_stereographic: point is (numerically) the north pole");
    }
    return {y.x / denom, y.y / denom};
}

double chordal_distance(const PlanarPoint& x, const PlanarPoint& y)
{
    return 2.0 * planar_distance(x, y) /
           (std::sqrt(1.0 + abs2(x)) * std::sqrt(1.0 + abs2(y)));
}

PlanarPoint mobius_apply(const MobiusMap& phi, const PlanarPoint& x) {
    const std::complex<double> z(x.x1, x.x2);
    const std::complex<double> denom = phi.c * z + phi.d;
    if (std::abs(denom) < 1e-14) {
        throw PoleOfMap("mobius_apply: point is the pole of the map");
    }
    const std::complex<double> w = (phi.a * z + phi.b) / denom;
    return {w.real(), w.imag()};
}

MobiusMap compose(const MobiusMap& phi, const MobiusMap& psi) {
    return MobiusMap(phi.a * psi.a + phi.b * psi.c, phi.a * psi.b + phi.b * psi.d,
                     phi.c * psi.a + phi.d * psi.c, phi.c * psi.b + phi.d * psi.d);
}

} // namespace logsphere
