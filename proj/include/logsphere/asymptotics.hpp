#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "logsphere/geometry.hpp"
#include "logsphere/lattice.hpp"

namespace logsphere {

/// Residual of the minimal-energy expansion:
/// r_n = (e_min - (1/2 - log 2) n^2 + (n/2) log n) / n.
struct ExpansionResidual {
    std::size_t n = 0;
    double e_min = 0.0;
    double r_n = 0.0;
};

enum class FitModel {
    PlainMean, // mean of the last quartile of residuals (by n)
    PowerLaw,  // least squares r_n = C + amp * n^{-p}, p in {1/2, 1}
};

struct FitResult {
    double c_hat = 0.0;
    FitModel model = FitModel::PowerLaw;
    double amp = 0.0;      // 0 for PlainMean
    double exponent = 0.0; // 0 for PlainMean
    double residual_norm = 0.0;
    std::size_t n_min = 0;
    std::size_t n_max = 0;
    double upper_bound = 0.0; // c_bhs
    double lower_bound = 0.0; // (1/pi) rsz_minw_lower + (log pi)/2 + log 2
    double slack_lo = 0.05;
    double slack_hi = 0.05;
    bool within_bounds = false;
};

std::vector<ExpansionResidual> residuals(const std::vector<std::pair<std::size_t, double>>& table);

/// Fit the order-n constant. Requires at least 4 distinct n spanning a
/// factor >= 4 (InsufficientData otherwise). within_bounds tests
/// lower_bound - slack_lo <= c_hat <= upper_bound + slack_hi.
FitResult fit_constant(const std::vector<ExpansionResidual>& res, FitModel model,
                       const ReferenceConstants& constants, double slack_lo = 0.05,
                       double slack_hi = 0.05);

/// One n of a minimization sweep; the configuration (when available) feeds
/// the per-n renormalized term of the report.
struct SweepEntry {
    std::size_t n = 0;
    double e_min = 0.0;
    std::optional<SphereConfiguration> config;
};

struct ReportRow {
    std::size_t n = 0;
    double e_min = 0.0;
    double r_n = 0.0;
    /// renormalized_term / (n pi) of the planar pullback of the best
    /// configuration; gauge-dependent diagnostic (see planar_pullback),
    /// absent when no configuration was supplied.
    std::optional<double> renorm_over_npi;
};

struct ExpansionReport {
    FitResult fit;
    double conjectural_c = 0.0;     // c_bhs
    double rsz_lower_bound_c = 0.0; // assembled from rsz_minw_lower
    double gap_to_conjecture = 0.0; // c_hat - c_bhs; reported, never asserted
    std::vector<ReportRow> rows;
};

/// Pull a sphere configuration back to the plane. The configuration is
/// first rotated so that the projection pole lands in the largest gap
/// (candidate pole directions: a fixed 60-direction set plus the antipodes
/// of the points; deterministic ties by candidate index), keeping all
/// planar coordinates moderate. The renormalized term of the pullback
/// depends on this gauge choice.
PlanarConfiguration planar_pullback(const SphereConfiguration& cfg);

ExpansionReport expansion_report(const std::vector<SweepEntry>& sweep,
                                 const ReferenceConstants& constants, FitModel model,
                                 double slack_lo = 0.05, double slack_hi = 0.05);

} // namespace logsphere
