#include "logsphere/energy.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numeric>

#include "logsphere/errors.hpp"
#include "logsphere/kahan.hpp"

namespace logsphere {

namespace {

constexpr double kCoincidenceTol = 1e-14;

/// Order-preserving integer key for finite doubles: adjacent keys are
/// adjacent representables, so bisecting keys walks the value grid.
std::int64_t monotone_key(double x) {
    std::int64_t bits;
    std::memcpy(&bits, &x, sizeof(bits));
    return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
}

double from_monotone_key(std::int64_t key) {
    const std::int64_t bits =
        key < 0 ? std::numeric_limits<std::int64_t>::min() - key : key;
    double x;
    std::memcpy(&x, &bits, sizeof(x));
    return x;
}

void require_size(std::size_t n) {
    if (n < 2) {
        throw DomainError("configuration needs at least 2 points");
    }
}

/// -sum_{i != j} log |x_i - x_j| for planar points; ordered pairs.
double planar_pair_energy(const std::vector<PlanarPoint>& pts) {
    const std::size_t n = pts.size();
    KahanSum outer;
    for (std::size_t i = 0; i < n; ++i) {
        KahanSum inner;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = planar_distance(pts[i], pts[j]);
            if (d < kCoincidenceTol) {
                throw CoincidentPoints("planar points closer than 1e-14");
            }
            inner.add(std::log(d));
        }
        outer.add(inner.value());
    }
    return -outer.value();
}

} // namespace

double log_energy_sphere(const SphereConfiguration& cfg) {
    require_size(cfg.n());
    const std::size_t n = cfg.n();
    KahanSum outer;
    for (std::size_t i = 0; i < n; ++i) {
        KahanSum inner;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = norm(cfg.points[i] - cfg.points[j]);
            if (d < kCoincidenceTol) {
                throw CoincidentPoints("sphere points closer than 1e-14");
            }
            inner.add(std::log(d));
        }
        outer.add(inner.value());
    }
    return -outer.value();
}

double hamiltonian_w(const PlanarConfiguration& cfg, const PotentialHandle& v) {
    require_size(cfg.n());
    const double pair_part = planar_pair_energy(cfg.points);
    KahanSum vsum;
    for (const PlanarPoint& p : cfg.points) {
        const double value = v(p);
        if (!std::isfinite(value)) {
            throw PoleOfPotential("potential not finite at a configuration point");
        }
        vsum.add(value);
    }
    return pair_part + static_cast<double>(cfg.n()) * vsum.value();
}

double hamiltonian_wbar(const PlanarConfiguration& cfg) {
    require_size(cfg.n());
    const double pair_part = planar_pair_energy(cfg.points);
    KahanSum lsum;
    for (const PlanarPoint& p : cfg.points) {
        lsum.add(std::log1p(abs2(p)));
    }
    return pair_part + static_cast<double>(cfg.n() - 1) * lsum.value();
}

SplittingReport splitting_report(const PlanarConfiguration& cfg, const EquilibriumData& eq) {
    if (!eq.canonical) {
        throw UnsupportedPotential("splitting_report: canonical equilibrium required");
    }
    require_size(cfg.n());
    const double n = static_cast<double>(cfg.n());

    SplittingReport rep;
    rep.n = cfg.n();
    rep.w_n = hamiltonian_w(cfg, PotentialHandle::canonical());
    rep.i_v_term = n * n * eq.i_v;
    rep.log_term = -(n / 2.0) * std::log(n);
    KahanSum zs;
    for (const PlanarPoint& p : cfg.points) {
        zs.add(zeta(p, eq));
    }
    rep.zeta_sum = 2.0 * n * zs.value();

    // The renormalized term is defined by the rearrangement
    //   r = w_n - i_v_term - log_term - zeta_sum,
    // refined so that the left-to-right reassembly reproduces w_n bitwise.
    // The reassembly is monotone in r, so bisecting r over the ordered bit
    // representation of doubles finds a preimage whenever one exists.
    // Round-half-to-even parity can make w_n unreachable for every r (each
    // candidate sum lands on an exact tie that rounds the other way);
    // log_term is the one irrational summand, so values within two ulps of
    // -(n/2) log n are tried as equally faithful roundings to break the
    // parity.
    const double inf = std::numeric_limits<double>::infinity();
    const std::int64_t key_min = monotone_key(-std::numeric_limits<double>::max());
    const std::int64_t key_max = monotone_key(std::numeric_limits<double>::max());
    const double lt0 = rep.log_term;
    double best_lt = lt0;
    double best_r = ((rep.w_n - rep.zeta_sum) - lt0) - rep.i_v_term;
    double best_err = inf;
    for (const int shift : {0, 1, -1, 2, -2}) {
        rep.log_term = lt0;
        for (int s = 0; s < shift; ++s) rep.log_term = std::nextafter(rep.log_term, inf);
        for (int s = 0; s > shift; --s) rep.log_term = std::nextafter(rep.log_term, -inf);
        const auto eval = [&rep](std::int64_t key) {
            rep.renormalized_term = from_monotone_key(key);
            return rep.reassembled();
        };
        std::int64_t lo = key_min;
        std::int64_t hi = key_max;
        while (lo < hi) {
            const std::int64_t mid = std::midpoint(lo, hi); // overflow-safe
            if (eval(mid) < rep.w_n) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        for (const std::int64_t key : {lo, lo > key_min ? lo - 1 : lo}) {
            const double err = std::fabs(eval(key) - rep.w_n);
            if (err < best_err) {
                best_err = err;
                best_lt = rep.log_term;
                best_r = rep.renormalized_term;
            }
        }
        if (best_err == 0.0) break;
    }
    rep.log_term = best_lt;
    rep.renormalized_term = best_r;
    return rep;
}

std::vector<Vec3> grad_log_energy_sphere(const SphereConfiguration& cfg) {
    require_size(cfg.n());
    const std::size_t n = cfg.n();
    std::vector<Vec3> grads(n);
    for (std::size_t i = 0; i < n; ++i) {
        KahanSum gx;
        KahanSum gy;
        KahanSum gz;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const Vec3 diff = cfg.points[i] - cfg.points[j];
            const double d2 = dot(diff, diff);
            if (d2 < kCoincidenceTol * kCoincidenceTol) {
                throw CoincidentPoints("sphere points closer than 1e-14");
            }
            const double scale = -2.0 / d2;
            gx.add(scale * diff.x);
            gy.add(scale * diff.y);
            gz.add(scale * diff.z);
        }
        const Vec3 g{gx.value(), gy.value(), gz.value()};
        grads[i] = g - dot(g, cfg.points[i]) * cfg.points[i];
    }
    return grads;
}

double mobius_energy_identity_check(const PlanarConfiguration& cfg, const MobiusMap& phi,
                                    const PotentialHandle& v) {
    require_size(cfg.n());
    PlanarConfiguration image;
    image.points.reserve(cfg.n());
    for (const PlanarPoint& p : cfg.points) {
        image.points.push_back(mobius_apply(phi, p));
    }
    const double lhs = hamiltonian_w(image, v);

    const PotentialHandle v_phi = transform_potential(phi, v);
    KahanSum correction;
    for (std::size_t i = 0; i < cfg.n(); ++i) {
        correction.add(std::log1p(abs2(image.points[i])) - std::log1p(abs2(cfg.points[i])));
    }
    const double rhs = hamiltonian_w(cfg, v_phi) + correction.value();
    return std::fabs(lhs - rhs);
}

} // namespace logsphere
