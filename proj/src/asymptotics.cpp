#include "logsphere/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "logsphere/energy.hpp"
#include "logsphere/errors.hpp"
#include "logsphere/potential.hpp"

namespace logsphere {

namespace {

struct LinearFit {
    double c = 0.0;
    double amp = 0.0;
    double residual_norm = 0.0;
};

/// Least squares r = c + amp * u over the given (u, r) pairs.
LinearFit fit_line(const std::vector<double>& u, const std::vector<double>& r) {
    const double k = static_cast<double>(u.size());
    double su = 0.0, suu = 0.0, sr = 0.0, sur = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        su += u[i];
        suu += u[i] * u[i];
        sr += r[i];
        sur += u[i] * r[i];
    }
    const double det = k * suu - su * su;
    LinearFit fit;
    if (std::fabs(det) < 1e-300) { // all abscissae equal; fall back to mean
        fit.c = sr / k;
        fit.amp = 0.0;
    } else {
        fit.c = (suu * sr - su * sur) / det;
        fit.amp = (k * sur - su * sr) / det;
    }
    double ss = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = r[i] - fit.c - fit.amp * u[i];
        ss += d * d;
    }
    fit.residual_norm = std::sqrt(ss);
    return fit;
}

} // namespace

std::vector<ExpansionResidual> residuals(
    const std::vector<std::pair<std::size_t, double>>& table) {
    std::vector<ExpansionResidual> out;
    out.reserve(table.size());
    for (const auto& [n, e] : table) {
        if (n < 2) {
            throw DomainError("residuals: n must be at least 2");
        }
        const double nd = static_cast<double>(n);
        ExpansionResidual r;
        r.n = n;
        r.e_min = e;
        r.r_n = (e - (0.5 - std::log(2.0)) * nd * nd + (nd / 2.0) * std::log(nd)) / nd;
        out.push_back(r);
    }
    return out;
}

FitResult fit_constant(const std::vector<ExpansionResidual>& res, FitModel model,
                       const ReferenceConstants& constants, double slack_lo,
                       double slack_hi) {
    std::vector<ExpansionResidual> sorted = res;
    std::sort(sorted.begin(), sorted.end(),
              [](const ExpansionResidual& a, const ExpansionResidual& b) { return a.n < b.n; });
    std::set<std::size_t> distinct;
    for (const ExpansionResidual& r : sorted) {
        distinct.insert(r.n);
    }
    if (distinct.size() < 4 ||
        static_cast<double>(*distinct.rbegin()) < 4.0 * static_cast<double>(*distinct.begin())) {
        throw InsufficientData(
            "fit_constant: need at least 4 distinct n spanning a factor of 4");
    }

    FitResult fit;
    fit.model = model;
    fit.n_min = sorted.front().n;
    fit.n_max = sorted.back().n;

    if (model == FitModel::PlainMean) {
        const std::size_t q = std::max<std::size_t>(1, sorted.size() / 4);
        double sum = 0.0;
        for (std::size_t i = sorted.size() - q; i < sorted.size(); ++i) {
            sum += sorted[i].r_n;
        }
        fit.c_hat = sum / static_cast<double>(q);
        double ss = 0.0;
        for (std::size_t i = sorted.size() - q; i < sorted.size(); ++i) {
            const double d = sorted[i].r_n - fit.c_hat;
            ss += d * d;
        }
        fit.residual_norm = std::sqrt(ss);
    } else {
        std::vector<double> r(sorted.size());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            r[i] = sorted[i].r_n;
        }
        LinearFit best;
        double best_p = 0.5;
        for (const double p : {0.5, 1.0}) {
            std::vector<double> u(sorted.size());
            for (std::size_t i = 0; i < sorted.size(); ++i) {
                u[i] = std::pow(static_cast<double>(sorted[i].n), -p);
            }
            const LinearFit candidate = fit_line(u, r);
            if (p == 0.5 || candidate.residual_norm < best.residual_norm) {
                best = candidate;
                best_p = p;
            }
        }
        fit.c_hat = best.c;
        fit.amp = best.amp;
        fit.exponent = best_p;
        fit.residual_norm = best.residual_norm;
    }

    fit.upper_bound = constants.c_bhs;
    fit.lower_bound = constants.rsz_minw_lower / M_PI + 0.5 * std::log(M_PI) + std::log(2.0);
    fit.slack_lo = slack_lo;
    fit.slack_hi = slack_hi;
    fit.within_bounds = (fit.lower_bound - slack_lo <= fit.c_hat) &&
                        (fit.c_hat <= fit.upper_bound + slack_hi);
    return fit;
}

PlanarConfiguration planar_pullback(const SphereConfiguration& cfg) {
    // Candidate pole directions: a fixed latitude/longitude net plus the
    // antipodes of the configuration points.
    std::vector<Vec3> candidates;
    candidates.reserve(60 + cfg.n());
    for (int band = 0; band < 6; ++band) {
        const double zc = -1.0 + (2.0 * band + 1.0) / 6.0;
        const double rho = std::sqrt(std::max(0.0, 1.0 - zc * zc));
        for (int k = 0; k < 10; ++k) {
            const double phi = 2.0 * M_PI * (static_cast<double>(k) + 0.5 * (band % 2)) / 10.0;
            candidates.push_back({rho * std::cos(phi), rho * std::sin(phi), zc});
        }
    }
    for (const Vec3& p : cfg.points) {
        candidates.push_back(-1.0 * p);
    }

    Vec3 pole{0.0, 0.0, 1.0};
    double best_clearance = -1.0;
    for (const Vec3& cand : candidates) {
        double clearance = std::numeric_limits<double>::infinity();
        for (const Vec3& p : cfg.points) {
            clearance = std::min(clearance, norm(cand - p));
        }
        if (clearance > best_clearance + 1e-15) {
            best_clearance = clearance;
            pole = cand;
        }
    }

    // Rotate the chosen direction to the north pole (Rodrigues again).
    const Vec3 north{0.0, 0.0, 1.0};
    Vec3 axis = cross(pole, north);
    const double axis_norm = norm(axis);
    const double cos_a = std::clamp(dot(pole, north), -1.0, 1.0);
    PlanarConfiguration out;
    out.points.reserve(cfg.n());
    for (Vec3 p : cfg.points) {
        if (axis_norm > 1e-12) {
            const Vec3 k = (1.0 / axis_norm) * axis;
            const double sin_a = std::sqrt(std::max(0.0, 1.0 - cos_a * cos_a));
            p = cos_a * p + sin_a * cross(k, p) + (dot(k, p) * (1.0 - cos_a)) * k;
        } else if (cos_a < 0.0) {
            p = {p.x, -p.y, -p.z};
        }
        const double nrm = norm(p);
        out.points.push_back(inverse_stereographic((1.0 / nrm) * p));
    }
    return out;
}

ExpansionReport expansion_report(const std::vector<SweepEntry>& sweep,
                                 const ReferenceConstants& constants, FitModel model,
                                 double slack_lo, double slack_hi) {
    std::vector<std::pair<std::size_t, double>> table;
    table.reserve(sweep.size());
    for (const SweepEntry& entry : sweep) {
        table.emplace_back(entry.n, entry.e_min);
    }
    const std::vector<ExpansionResidual> res = residuals(table);

    ExpansionReport report;
    report.fit = fit_constant(res, model, constants, slack_lo, slack_hi);
    report.conjectural_c = constants.c_bhs;
    report.rsz_lower_bound_c = report.fit.lower_bound;
    report.gap_to_conjecture = report.fit.c_hat - constants.c_bhs;

    const EquilibriumData eq = canonical_equilibrium();
    report.rows.reserve(sweep.size());
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        ReportRow row;
        row.n = res[i].n;
        row.e_min = res[i].e_min;
        row.r_n = res[i].r_n;
        if (sweep[i].config.has_value()) {
            const PlanarConfiguration planar = planar_pullback(*sweep[i].config);
            const SplittingReport split = splitting_report(planar, eq);
            row.renorm_over_npi =
                split.renormalized_term / (static_cast<double>(row.n) * M_PI);
        }
        report.rows.push_back(row);
    }
    return report;
}

} // namespace logsphere
