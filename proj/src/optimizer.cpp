#include "logsphere/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "logsphere/energy.hpp"
#include "logsphere/errors.hpp"
#include "logsphere/kahan.hpp"
#include "logsphere/parallel.hpp"
#include "logsphere/rng.hpp"

namespace logsphere {

namespace {

constexpr double kStepUnderflow = 1e-18;
constexpr double kStepGrowth = 2.0;
constexpr double kStepMax = 1e6;
constexpr double kGoldenFrac = 0.6180339887498949; // frac(1/golden ratio)

/// Structure-of-arrays point set; the inner loops below are the hot path of
/// the whole artifact, so they work on contiguous coordinate arrays and use
/// plain fixed-order accumulation (order, not compensation, is what the
/// bitwise determinism contract needs; the public energy entry points add
/// compensation on top for accuracy).
struct Points {
    std::vector<double> x, y, z;

    explicit Points(std::size_t n) : x(n), y(n), z(n) {}
    std::size_t size() const { return x.size(); }
};

SphereConfiguration to_configuration(const Points& p) {
    SphereConfiguration cfg;
    cfg.points.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        cfg.points[i] = {p.x[i], p.y[i], p.z[i]};
    }
    return cfg;
}

/// Line-search energy: -1/2 sum_{i != j} log d2_ij, evaluated with batched
/// log-of-products (flushed early to dodge underflow). Returns +inf for a
/// (nearly) coincident pair so the Armijo test rejects the trial step.
double energy_fast(const Points& p) {
    const std::size_t n = p.size();
    KahanSum outer;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = p.x[i], yi = p.y[i], zi = p.z[i];
        double acc = 0.0;
        double prod = 1.0;
        int batch = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = xi - p.x[j];
            const double dy = yi - p.y[j];
            const double dz = zi - p.z[j];
            const double d2 = dx * dx + dy * dy + dz * dz;
            if (d2 < 1e-28) {
                return std::numeric_limits<double>::infinity();
            }
            prod *= d2;
            if (++batch == 16 || prod < 1e-250) {
                acc += std::log(prod);
                prod = 1.0;
                batch = 0;
            }
        }
        acc += std::log(prod);
        outer.add(acc);
    }
    return -0.5 * outer.value();
}

/// Tangent-projected gradient; returns the sup over points of the
/// per-point gradient norm and fills g (same layout as p).
double gradient(const Points& p, Points& g) {
    const std::size_t n = p.size();
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = p.x[i], yi = p.y[i], zi = p.z[i];
        double gx = 0.0, gy = 0.0, gz = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = xi - p.x[j];
            const double dy = yi - p.y[j];
            const double dz = zi - p.z[j];
            const double d2 = dx * dx + dy * dy + dz * dz;
            const double s = -2.0 / d2;
            gx += s * dx;
            gy += s * dy;
            gz += s * dz;
        }
        const double radial = gx * xi + gy * yi + gz * zi;
        gx -= radial * xi;
        gy -= radial * yi;
        gz -= radial * zi;
        g.x[i] = gx;
        g.y[i] = gy;
        g.z[i] = gz;
        sup = std::max(sup, std::sqrt(gx * gx + gy * gy + gz * gz));
    }
    return sup;
}

double min_squared_separation(const Points& p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            const double dx = p.x[i] - p.x[j];
            const double dy = p.y[i] - p.y[j];
            const double dz = p.z[i] - p.z[j];
            best = std::min(best, dx * dx + dy * dy + dz * dz);
        }
    }
    return best;
}

void add_tangent_noise(Points& p, double sigma, Rng& rng) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Vec3 y{p.x[i], p.y[i], p.z[i]};
        // Orthonormal tangent basis at y, seeded from the smallest axis.
        const Vec3 axis = (std::fabs(y.x) <= std::fabs(y.y) && std::fabs(y.x) <= std::fabs(y.z))
                              ? Vec3{1, 0, 0}
                              : (std::fabs(y.y) <= std::fabs(y.z) ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
        Vec3 e1 = cross(y, axis);
        const double n1 = norm(e1);
        e1 = (1.0 / n1) * e1;
        const Vec3 e2 = cross(y, e1);
        const double a = sigma * rng.gaussian();
        const double b = sigma * rng.gaussian();
        Vec3 q = y + a * e1 + b * e2;
        const double qn = norm(q);
        p.x[i] = q.x / qn;
        p.y[i] = q.y / qn;
        p.z[i] = q.z / qn;
    }
}

Points initial_points(std::size_t n, const MinimizeOptions& opts, std::size_t restart, Rng& rng) {
    Points p(n);
    const double sigma = 0.5 / std::sqrt(static_cast<double>(n));
    switch (opts.init) {
        case InitScheme::SpiralPerturbed: {
            for (std::size_t i = 0; i < n; ++i) {
                const double zc = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
                const double r = std::sqrt(std::max(0.0, 1.0 - zc * zc));
                const double frac_part =
                    static_cast<double>(i) * kGoldenFrac - std::floor(static_cast<double>(i) * kGoldenFrac);
                const double phi = 2.0 * M_PI * frac_part;
                p.x[i] = r * std::cos(phi);
                p.y[i] = r * std::sin(phi);
                p.z[i] = zc;
            }
            add_tangent_noise(p, sigma, rng);
            break;
        }
        case InitScheme::RandomUniform: {
            for (std::size_t i = 0; i < n; ++i) {
                double nrm = 0.0;
                do {
                    const Vec3 g{rng.gaussian(), rng.gaussian(), rng.gaussian()};
                    nrm = norm(g);
                    if (nrm > 1e-12) {
                        p.x[i] = g.x / nrm;
                        p.y[i] = g.y / nrm;
                        p.z[i] = g.z / nrm;
                    }
                } while (nrm <= 1e-12);
            }
            break;
        }
        case InitScheme::Provided: {
            if (opts.provided.n() != n) {
                throw DomainError("minimize_log_energy: provided configuration has wrong size");
            }
            for (std::size_t i = 0; i < n; ++i) {
                p.x[i] = opts.provided.points[i].x;
                p.y[i] = opts.provided.points[i].y;
                p.z[i] = opts.provided.points[i].z;
            }
            if (restart > 0) {
                add_tangent_noise(p, sigma, rng);
            }
            break;
        }
    }
    // Re-noise in the (essentially impossible) event of a coincident pair;
    // the RNG stream simply continues, so this stays deterministic.
    for (int attempt = 0; attempt < 100 && min_squared_separation(p) < 1e-18; ++attempt) {
        add_tangent_noise(p, sigma, rng);
    }
    return p;
}

struct RestartOutcome {
    Points points{0};
    std::size_t iterations = 0;
    bool converged = false;
    bool underflow = false;
};

RestartOutcome run_restart(std::size_t n, const MinimizeOptions& opts, std::size_t restart) {
    Rng rng = Rng::for_restart(opts.seed, restart);
    RestartOutcome out;
    out.points = initial_points(n, opts, restart, rng);
    Points grad(n);
    Points trial(n);

    double energy = energy_fast(out.points);
    double step = opts.step0 > 0.0 ? opts.step0 : 1.0 / static_cast<double>(n);

    for (std::size_t iter = 0; iter < opts.max_iters; ++iter) {
        const double sup = gradient(out.points, grad);
        if (sup <= opts.grad_tol) {
            out.converged = true;
            break;
        }
        double gnorm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            gnorm2 += grad.x[i] * grad.x[i] + grad.y[i] * grad.y[i] + grad.z[i] * grad.z[i];
        }

        double t = step;
        bool accepted = false;
        while (t >= kStepUnderflow) {
            for (std::size_t i = 0; i < n; ++i) {
                const double qx = out.points.x[i] - t * grad.x[i];
                const double qy = out.points.y[i] - t * grad.y[i];
                const double qz = out.points.z[i] - t * grad.z[i];
                const double qn = std::sqrt(qx * qx + qy * qy + qz * qz);
                trial.x[i] = qx / qn;
                trial.y[i] = qy / qn;
                trial.z[i] = qz / qn;
            }
            const double trial_energy = energy_fast(trial);
            if (trial_energy <= energy - opts.armijo_c * t * gnorm2) {
                std::swap(out.points, trial);
                // A displacement below one coordinate ulp cannot move any
                // point: the accepted "decrease" is pure rounding, and
                // continuing would cycle forever on identical states.
                if (trial_energy == energy && t * sup <= 1e-16) {
                    out.iterations = iter + 1;
                    return out;
                }
                energy = trial_energy;
                step = std::min(t * kStepGrowth, kStepMax);
                accepted = true;
                break;
            }
            t *= opts.shrink;
        }
        out.iterations = iter + 1;
        if (!accepted) {
            out.underflow = true;
            break;
        }
    }
    return out;
}

/// Rotate so that point 0 sits at the north pole and point 1 has zero
/// azimuth; used only for deterministic tie-breaking between restarts.
std::vector<Vec3> canonical_rotation(const SphereConfiguration& cfg) {
    std::vector<Vec3> pts = cfg.points;
    const Vec3 north{0.0, 0.0, 1.0};
    const Vec3 p0 = pts[0];
    Vec3 axis = cross(p0, north);
    const double axis_norm = norm(axis);
    double cos_a = std::clamp(dot(p0, north), -1.0, 1.0);
    if (axis_norm > 1e-12) {
        axis = (1.0 / axis_norm) * axis;
        const double sin_a = std::sqrt(std::max(0.0, 1.0 - cos_a * cos_a));
        for (Vec3& p : pts) { // Rodrigues rotation
            p = cos_a * p + sin_a * cross(axis, p) + (dot(axis, p) * (1.0 - cos_a)) * axis;
        }
    } else if (cos_a < 0.0) {
        for (Vec3& p : pts) { // p0 at the south pole: half-turn about x
            p = {p.x, -p.y, -p.z};
        }
    }
    if (pts.size() > 1) {
        const double rho = std::hypot(pts[1].x, pts[1].y);
        if (rho > 1e-12) {
            const double c = pts[1].x / rho;
            const double s = pts[1].y / rho;
            for (Vec3& p : pts) {
                p = {c * p.x + s * p.y, -s * p.x + c * p.y, p.z};
            }
        }
    }
    return pts;
}

bool lexicographically_before(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].x != b[i].x) return a[i].x < b[i].x;
        if (a[i].y != b[i].y) return a[i].y < b[i].y;
        if (a[i].z != b[i].z) return a[i].z < b[i].z;
    }
    return false;
}

} // namespace

MinimizeResult minimize_log_energy(std::size_t n, const MinimizeOptions& opts) {
    if (n < 2) {
        throw DomainError("minimize_log_energy: n must be at least 2");
    }
    if (opts.restarts < 1 || !(opts.grad_tol > 0.0)) {
        throw DomainError("minimize_log_energy: restarts >= 1 and grad_tol > 0 required");
    }

    std::vector<RestartOutcome> outcomes(opts.restarts);
    parallel_for_index(opts.restarts,
                       [&](std::size_t r) { outcomes[r] = run_restart(n, opts, r); });

    bool all_underflowed = true;
    for (const RestartOutcome& o : outcomes) {
        all_underflowed = all_underflowed && o.underflow;
    }
    if (all_underflowed) {
        throw NoProgress("minimize_log_energy: line search underflowed on every restart");
    }

    // Sequential selection in restart order; energies recomputed through the
    // canonical (compensated) path so the persisted value matches
    // log_energy_sphere(best) bitwise.
    MinimizeResult best;
    bool have_best = false;
    std::vector<Vec3> best_canonical;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        SphereConfiguration cfg = to_configuration(outcomes[r].points);
        const double energy = log_energy_sphere(cfg);
        bool take = false;
        std::vector<Vec3> canon;
        if (!have_best || energy < best.energy - 1e-12) {
            take = true;
            canon = canonical_rotation(cfg);
        } else if (energy <= best.energy + 1e-12) {
            canon = canonical_rotation(cfg);
            take = lexicographically_before(canon, best_canonical);
        }
        if (take) {
            best.best = std::move(cfg);
            best.energy = energy;
            best.iterations = outcomes[r].iterations;
            best.converged = outcomes[r].converged;
            best_canonical = std::move(canon);
            have_best = true;
        }
    }

    best.restarts_used = opts.restarts;
    const std::vector<Vec3> grads = grad_log_energy_sphere(best.best);
    double sup = 0.0;
    for (const Vec3& g : grads) {
        sup = std::max(sup, norm(g));
    }
    best.grad_norm = sup;
    double min_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < best.best.n(); ++i) {
        for (std::size_t j = i + 1; j < best.best.n(); ++j) {
            const Vec3 d = best.best.points[i] - best.best.points[j];
            min_d2 = std::min(min_d2, dot(d, d));
        }
    }
    best.min_separation = std::sqrt(min_d2);
    return best;
}

bool separation_check(const MinimizeResult& res, double c) {
    const double n = static_cast<double>(res.best.n());
    return res.min_separation > c / std::sqrt(n - 1.0);
}

std::vector<EnergyTableEntry> energy_table(const std::vector<std::size_t>& ns,
                                           const MinimizeOptions& opts) {
    std::vector<EnergyTableEntry> table;
    table.reserve(ns.size());
    for (const std::size_t n : ns) {
        EnergyTableEntry entry;
        entry.n = n;
        try {
            entry.result = minimize_log_energy(n, opts);
            entry.energy = entry.result.energy;
            entry.ok = true;
        } catch (const Error& e) {
            entry.ok = false;
            entry.error = e.what();
        }
        table.push_back(std::move(entry));
    }
    return table;
}

} // namespace logsphere
