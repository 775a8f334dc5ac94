#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "logsphere/asymptotics.hpp"
#include "logsphere/energy.hpp"
#include "logsphere/errors.hpp"
#include "logsphere/lattice.hpp"
#include "oracles.hpp"

using namespace logsphere;

namespace {

double synthetic_energy(std::size_t n, double r) {
    const double nd = static_cast<double>(n);
    return (0.5 - std::log(2.0)) * nd * nd - 0.5 * nd * std::log(nd) + nd * r;
}

std::vector<std::pair<std::size_t, double>> synthetic_table(const std::vector<std::size_t>& ns,
                                                            double c, double amp, double p) {
    std::vector<std::pair<std::size_t, double>> table;
    for (const std::size_t n : ns) {
        const double nd = static_cast<double>(n);
        table.emplace_back(n, synthetic_energy(n, c + amp * std::pow(nd, -p)));
    }
    return table;
}

} // namespace

TEST_CASE("residual of the antipodal pair") {
    const auto res = residuals({{2, oracles::kEnergyAntipodal}});
    REQUIRE(res.size() == 1);
    CHECK(res[0].n == 2);
    CHECK(std::fabs(res[0].r_n - oracles::kResidualN2) <= 1e-14);
    CHECK_THROWS_AS((void)residuals({{1, 0.0}}), DomainError);
}

TEST_CASE("constant residuals are recovered exactly by both models") {
    const ReferenceConstants k = reference_constants();
    const std::vector<std::size_t> ns{8, 16, 32, 64, 128};
    const auto table = synthetic_table(ns, -0.04, 0.0, 0.5);
    const auto res = residuals(table);
    const FitResult mean = fit_constant(res, FitModel::PlainMean, k);
    CHECK(std::fabs(mean.c_hat + 0.04) <= 1e-10);
    CHECK(mean.amp == 0.0);
    const FitResult pow = fit_constant(res, FitModel::PowerLaw, k);
    CHECK(std::fabs(pow.c_hat + 0.04) <= 1e-9);
    CHECK(mean.n_min == 8);
    CHECK(mean.n_max == 128);
}

TEST_CASE("power law fit recovers an exact square-root decay") {
    const ReferenceConstants k = reference_constants();
    std::vector<std::size_t> ns;
    for (std::size_t n = 16; n <= 4096; n *= 2) ns.push_back(n);
    const auto res = residuals(synthetic_table(ns, -0.0556, 0.3, 0.5));
    const FitResult fit = fit_constant(res, FitModel::PowerLaw, k);
    CHECK(fit.model == FitModel::PowerLaw);
    CHECK(fit.exponent == 0.5);
    CHECK(std::fabs(fit.c_hat + 0.0556) <= 1e-9);
    CHECK(std::fabs(fit.amp - 0.3) <= 1e-7);
    CHECK(fit.residual_norm <= 1e-10);
    CHECK(fit.within_bounds); // -0.0556 sits inside the slack band
}

TEST_CASE("power law fit selects the 1/n exponent when it fits better") {
    const ReferenceConstants k = reference_constants();
    std::vector<std::size_t> ns;
    for (std::size_t n = 16; n <= 2048; n *= 2) ns.push_back(n);
    const auto res = residuals(synthetic_table(ns, -0.06, 2.0, 1.0));
    const FitResult fit = fit_constant(res, FitModel::PowerLaw, k);
    CHECK(fit.exponent == 1.0);
    CHECK(std::fabs(fit.c_hat + 0.06) <= 1e-9);
}

TEST_CASE("plain mean averages the last quartile") {
    const ReferenceConstants k = reference_constants();
    // residuals 1,2,...,8 over increasing n: last quartile is {7, 8}
    std::vector<ExpansionResidual> res;
    for (std::size_t i = 1; i <= 8; ++i) {
        res.push_back({i * 16, 0.0, static_cast<double>(i)});
    }
    // shuffle the input order; fit sorts by n internally
    std::swap(res[0], res[5]);
    std::swap(res[2], res[7]);
    const FitResult fit = fit_constant(res, FitModel::PlainMean, k);
    CHECK(fit.c_hat == doctest::Approx(7.5).epsilon(1e-15));
}

TEST_CASE("fits require enough well-spread sizes") {
    const ReferenceConstants k = reference_constants();
    const auto too_few = residuals(synthetic_table({8, 16, 32}, -0.05, 0.0, 0.5));
    CHECK_THROWS_AS((void)fit_constant(too_few, FitModel::PlainMean, k), InsufficientData);
    const auto too_narrow = residuals(synthetic_table({10, 12, 14, 16}, -0.05, 0.0, 0.5));
    CHECK_THROWS_AS((void)fit_constant(too_narrow, FitModel::PowerLaw, k), InsufficientData);
    const auto just_enough = residuals(synthetic_table({10, 20, 30, 40}, -0.05, 0.0, 0.5));
    CHECK_NOTHROW((void)fit_constant(just_enough, FitModel::PlainMean, k));
}

TEST_CASE("bounds are wired from the closed-form constants") {
    const ReferenceConstants k = reference_constants();
    const auto res = residuals(synthetic_table({16, 32, 64, 128}, -0.05, 0.0, 0.5));
    const FitResult fit = fit_constant(res, FitModel::PlainMean, k, 0.05, 0.1);
    CHECK(fit.upper_bound == k.c_bhs);
    CHECK(std::fabs(fit.lower_bound - k.rsz_c_lower) <= 1e-12);
    CHECK(fit.slack_lo == 0.05);
    CHECK(fit.slack_hi == 0.1);
    CHECK(fit.within_bounds);

    // far outside on either side
    const auto high = residuals(synthetic_table({16, 32, 64, 128}, 0.25, 0.0, 0.5));
    CHECK_FALSE(fit_constant(high, FitModel::PlainMean, k).within_bounds);
    const auto low = residuals(synthetic_table({16, 32, 64, 128}, -0.5, 0.0, 0.5));
    CHECK_FALSE(fit_constant(low, FitModel::PlainMean, k).within_bounds);
}

TEST_CASE("planar pullback preserves the configuration up to rotation") {
    const SphereConfiguration octa = oracles::octahedron();
    const PlanarConfiguration flat = planar_pullback(octa);
    REQUIRE(flat.n() == 6);
    // the bridge to the sphere energy survives the pullback
    const double nd = 6.0;
    CHECK(std::fabs(hamiltonian_wbar(flat) -
                    (oracles::kEnergyOctahedron + nd * (nd - 1.0) * std::log(2.0))) <= 1e-9);
    // planar coordinates stay moderate when the pole sits in the largest gap
    for (const PlanarPoint& p : flat.points) CHECK(abs2(p) <= 100.0);
}

TEST_CASE("expansion report assembles rows, fit and gap") {
    const ReferenceConstants k = reference_constants();
    std::vector<SweepEntry> sweep;
    SweepEntry first;
    first.n = 6;
    first.e_min = oracles::kEnergyOctahedron;
    first.config = oracles::octahedron();
    sweep.push_back(first);
    for (const std::size_t n : {12u, 24u, 48u, 96u}) {
        SweepEntry entry;
        entry.n = n;
        entry.e_min = synthetic_energy(n, -0.05 + 0.2 / std::sqrt(static_cast<double>(n)));
        sweep.push_back(entry);
    }

    const ExpansionReport report = expansion_report(sweep, k, FitModel::PowerLaw);
    CHECK(report.conjectural_c == k.c_bhs);
    CHECK(std::fabs(report.rsz_lower_bound_c - k.rsz_c_lower) <= 1e-12);
    CHECK(report.gap_to_conjecture ==
          doctest::Approx(report.fit.c_hat - k.c_bhs).epsilon(1e-15));
    REQUIRE(report.rows.size() == 5);
    CHECK(report.rows[0].n == 6);
    CHECK(report.rows[0].renorm_over_npi.has_value());
    CHECK_FALSE(report.rows[1].renorm_over_npi.has_value());

    // each row reconstructs its input energy through the residual
    for (const ReportRow& row : report.rows) {
        const double rebuilt = synthetic_energy(row.n, row.r_n);
        CHECK(std::fabs(rebuilt - row.e_min) <= 1e-9 * (1.0 + std::fabs(row.e_min)));
    }
}
