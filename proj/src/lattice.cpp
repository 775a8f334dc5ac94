#include "logsphere/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "logsphere/errors.hpp"
#include "logsphere/parallel.hpp"

namespace logsphere {

namespace {

constexpr double kTiny = 1e-14;

double cross2(const PlanarPoint& a, const PlanarPoint& b) {
    return a.x1 * b.x2 - a.x2 * b.x1;
}

double dot2(const PlanarPoint& a, const PlanarPoint& b) {
    return a.x1 * b.x1 + a.x2 * b.x2;
}

} // namespace

std::complex<double> dedekind_eta(std::complex<double> tau) {
    if (!(tau.imag() > 0.0)) {
        throw DomainError("dedekind_eta: Im tau must be positive");
    }
    const std::complex<double> i_pi_tau(-M_PI * tau.imag(), M_PI * tau.real());
    const std::complex<double> q = std::exp(2.0 * i_pi_tau);
    const std::complex<double> prefactor = std::exp(i_pi_tau / 12.0);
    const double qa = std::abs(q);

    std::complex<double> product(1.0, 0.0);
    std::complex<double> qk(1.0, 0.0);
    double qak = 1.0;
    for (int k = 1; k <= 200; ++k) {
        qk *= q;
        qak *= qa;
        product *= (1.0 - qk);
        if (qak < 1e-18) break;
    }
    return prefactor * product;
}

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        throw DomainError("gamma_fn: requires x > 0");
    }
    // Lanczos, g = 7, 9 coefficients.
    static const double coef[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (x < 0.5) {
        // Reflection keeps the argument of the core approximation >= 1/2.
        return M_PI / (std::sin(M_PI * x) * gamma_fn(1.0 - x));
    }
    const double z = x - 1.0;
    double acc = coef[0];
    for (int k = 1; k < 9; ++k) {
        acc += coef[k] / (z + static_cast<double>(k));
    }
    const double t = z + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

std::complex<double> reduce_tau(std::complex<double> tau) {
    if (!(tau.imag() > 0.0)) {
        throw DomainError("reduce_tau: Im tau must be positive");
    }
    for (int iter = 0; iter < 256; ++iter) {
        tau = {tau.real() - std::round(tau.real()), tau.imag()};
        if (std::norm(tau) < 1.0 - 1e-15) {
            tau = -1.0 / tau;
        } else {
            break;
        }
    }
    // Boundary ties resolve to Re tau >= 0.
    if (tau.real() < -0.5 + 1e-12) {
        tau = {tau.real() + 1.0, tau.imag()};
    } else if (std::abs(std::norm(tau) - 1.0) < 1e-12 && tau.real() < 0.0) {
        tau = {-tau.real(), tau.imag()}; // S move on the unit circle
    }
    return tau;
}

LatticeShape reduce_lattice(const BravaisLattice& basis) {
    PlanarPoint u = basis.u;
    PlanarPoint v = basis.v;
    const double det = cross2(u, v);
    if (std::fabs(det) < kTiny) {
        throw DegenerateBasis("reduce_lattice: basis vectors are linearly dependent");
    }

    // Lagrange-Gauss: shrink the longer vector by integer multiples of the
    // shorter until no improvement remains.
    if (dot2(u, u) > dot2(v, v)) std::swap(u, v);
    for (int iter = 0; iter < 256; ++iter) {
        const double mu = std::round(dot2(u, v) / dot2(u, u));
        v = {v.x1 - mu * u.x1, v.x2 - mu * u.x2};
        if (dot2(v, v) < dot2(u, u)) {
            std::swap(u, v);
        } else {
            break;
        }
    }

    const std::complex<double> cu(u.x1, u.x2);
    const std::complex<double> cv(v.x1, v.x2);
    std::complex<double> tau = cv / cu;
    if (tau.imag() < 0.0) {
        tau = -tau; // flip orientation: same lattice, upper half-plane
    }
    LatticeShape shape;
    shape.tau = reduce_tau(tau);
    shape.density = 1.0 / std::fabs(det);
    return shape;
}

double w_reference_density(std::complex<double> tau) {
    if (!(tau.imag() > 0.0)) {
        throw DomainError("w_reference_density: Im tau must be positive");
    }
    const double eta_abs2 = std::norm(dedekind_eta(tau));
    return -0.5 * std::log(std::sqrt(2.0 * M_PI * tau.imag()) * eta_abs2);
}

double w_density_one(std::complex<double> tau) {
    return 2.0 * M_PI * w_reference_density(tau) - 0.5 * M_PI * std::log(2.0 * M_PI);
}

double w_lattice(const LatticeShape& shape) {
    if (!(shape.tau.imag() > 0.0)) {
        throw DomainError("w_lattice: Im tau must be positive");
    }
    if (!(shape.density > 0.0)) {
        throw DomainError("w_lattice: density must be positive");
    }
    const double w1 = w_density_one(shape.tau);
    const double m = shape.density;
    return m * (w1 - 0.5 * M_PI * std::log(m));
}

double chowla_selberg_check() {
    const double eta4 = std::norm(dedekind_eta(tau_triangular()));
    const double lhs = eta4 * eta4; // |eta|^4 = (|eta|^2)^2
    const double g13 = gamma_fn(1.0 / 3.0);
    const double pi4 = M_PI * M_PI * M_PI * M_PI;
    const double rhs = std::pow(g13, 6.0) * std::sqrt(3.0) / (16.0 * pi4);
    return std::fabs(lhs - rhs);
}

ReferenceConstants reference_constants() {
    ReferenceConstants k;
    const double g13 = gamma_fn(1.0 / 3.0);
    k.c_bhs = 2.0 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0) +
              3.0 * std::log(std::sqrt(M_PI) / g13);
    k.w_tri_density1 = w_lattice({tau_triangular(), 1.0});
    const double root_sum = std::sqrt(2.0 * M_PI + std::sqrt(27.0));
    const double root_2pi = std::sqrt(2.0 * M_PI);
    k.rsz_a = (2.0 * root_2pi / std::sqrt(27.0)) * (root_sum + root_2pi);
    k.rsz_b = (root_sum - root_2pi) / (root_sum + root_2pi);
    const double base = (1.0 - std::exp(-k.rsz_a));
    k.rsz_minw_lower = -0.5 * M_PI * std::log(2.0 * M_PI * M_PI * std::pow(base, k.rsz_b));
    k.rsz_c_lower = -0.5 * std::log(0.5 * M_PI * std::pow(base, k.rsz_b));
    return k;
}

ScanResult minimality_scan(std::size_t grid_re, std::size_t grid_im, double im_max) {
    if (grid_re < 32 || grid_im < 32) {
        throw DomainError("minimality_scan: grid must be at least 32x32");
    }
    if (!(im_max >= 2.0)) {
        throw DomainError("minimality_scan: im_max must be at least 2");
    }
    const double im_min = std::sqrt(3.0) / 2.0;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> values(grid_re * grid_im, nan);

    auto re_at = [grid_re](std::size_t i) {
        // Corner-exact spacing: i = 0 and i = grid_re-1 give exactly -+1/2.
        return (2.0 * static_cast<double>(i) - static_cast<double>(grid_re - 1)) /
               (2.0 * static_cast<double>(grid_re - 1));
    };
    auto im_at = [grid_im, im_min, im_max](std::size_t j) {
        return im_min + (im_max - im_min) * static_cast<double>(j) /
                            static_cast<double>(grid_im - 1);
    };

    parallel_for_index(grid_im, [&](std::size_t j) {
        const double im = im_at(j);
        for (std::size_t i = 0; i < grid_re; ++i) {
            const double re = re_at(i);
            if (re * re + im * im < 1.0 - 1e-12) {
                continue; // outside the fundamental domain
            }
            values[j * grid_re + i] = w_density_one({re, im});
        }
    });

    // Sequential argmin; ties broken by lowest row, then lowest column.
    ScanResult out;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid_im; ++j) {
        for (std::size_t i = 0; i < grid_re; ++i) {
            const double v = values[j * grid_re + i];
            if (std::isnan(v)) continue;
            if (v < best) {
                best = v;
                out.argmin_row = j;
                out.argmin_col = i;
            }
        }
    }
    out.min_value = best;
    out.argmin = {re_at(out.argmin_col), im_at(out.argmin_row)};

    // Margin to the runner-up outside the 3x3 neighborhoods of the argmin
    // and of its Re-mirror (the scan is exactly mirror symmetric, so the
    // mirror would otherwise always be the runner-up at zero margin).
    const std::size_t mirror_col = grid_re - 1 - out.argmin_col;
    auto near = [](std::size_t a, std::size_t b) {
        return (a > b ? a - b : b - a) <= 1;
    };
    double second = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid_im; ++j) {
        for (std::size_t i = 0; i < grid_re; ++i) {
            const double v = values[j * grid_re + i];
            if (std::isnan(v)) continue;
            if (near(j, out.argmin_row) && (near(i, out.argmin_col) || near(i, mirror_col))) {
                continue;
            }
            second = std::min(second, v);
        }
    }
    out.margin = second - best;
    return out;
}

} // namespace logsphere
