#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace logsphere {

/// Point in the plane R^2.
struct PlanarPoint {
    double x1 = 0.0;
    double x2 = 0.0;
};

inline double abs2(const PlanarPoint& p) { return p.x1 * p.x1 + p.x2 * p.x2; }

inline double planar_distance(const PlanarPoint& a, const PlanarPoint& b) {
    return std::hypot(a.x1 - b.x1, a.x2 - b.x2);
}

/// Plain 3-vector; doubles as a point on the unit sphere (see SpherePoint)
/// and as a tangent vector.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// Point on the origin-centered unit sphere; operations producing
/// SpherePoints keep | |y| - 1 | <= 1e-12.
using SpherePoint = Vec3;

/// Ordered list of n >= 2 pairwise distinct planar points.
struct PlanarConfiguration {
    std::vector<PlanarPoint> points;
    std::size_t n() const { return points.size(); }
};

/// Ordered list of n >= 2 pairwise distinct unit-sphere points.
/// contains_north marks configurations that include the pole N = (0,0,1)
/// by construction (e.g. images of a planar configuration plus N).
struct SphereConfiguration {
    std::vector<SpherePoint> points;
    bool contains_north = false;
    std::size_t n() const { return points.size(); }
};

/// Fractional-linear map z -> (az+b)/(cz+d), normalized to ad - bc = 1
/// on construction.
struct MobiusMap {
    std::complex<double> a{1.0, 0.0};
    std::complex<double> b{0.0, 0.0};
    std::complex<double> c{0.0, 0.0};
    std::complex<double> d{1.0, 0.0};

    MobiusMap() = default;
    MobiusMap(std::complex<double> a_, std::complex<double> b_,
              std::complex<double> c_, std::complex<double> d_);

    static MobiusMap identity() { return MobiusMap(); }
    /// z -> -1/z
    static MobiusMap inversion() { return MobiusMap({0, 0}, {-1, 0}, {1, 0}, {0, 0}); }

    bool is_identity(double tol = 1e-15) const;
};

/// Map a planar point onto the origin-centered unit sphere:
/// y = (2 x1, 2 x2, |x|^2 - 1) / (1 + |x|^2). The origin goes to the south
/// pole and |x| -> infinity approaches the north pole N = (0,0,1).
SpherePoint stereographic(const PlanarPoint& x);

/// Inverse of stereographic(); throws NorthPoleNotRepresentable when y is
/// within 1e-12 of N.
PlanarPoint inverse_stereographic(const SpherePoint& y);

/// 2|x-y| / (sqrt(1+|x|^2) sqrt(1+|y|^2)); equals the Euclidean distance of
/// the unit-sphere images of x and y.
double chordal_distance(const PlanarPoint& x, const PlanarPoint& y);

/// Evaluate phi at x via the complex identification z = x1 + i x2.
/// Throws PoleOfMap when |cz + d| < 1e-14.
PlanarPoint mobius_apply(const MobiusMap& phi, const PlanarPoint& x);

/// Composition: apply(compose(phi, psi), x) == apply(phi, apply(psi, x)).
MobiusMap compose(const MobiusMap& phi, const MobiusMap& psi);

} // namespace logsphere
