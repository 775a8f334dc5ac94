#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "logsphere/asymptotics.hpp"
#include "logsphere/geometry.hpp"
#include "logsphere/optimizer.hpp"

namespace logsphere {

/// One persisted minimization run (the config_<n>.json artifact).
/// `timestamp` is metadata and excluded from determinism comparisons;
/// everything else round-trips bit for bit.
struct RunRecord {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double energy = 0.0;
    double grad_norm = 0.0;
    double min_separation = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    // options echo
    std::size_t restarts = 0;
    std::size_t max_iters = 0;
    double grad_tol = 0.0;
    double step0 = 0.0;
    double armijo_c = 0.0;
    double shrink = 0.0;
    std::string init; // "spiral" | "random" | "provided"
    std::vector<SpherePoint> points;
    std::string timestamp; // ISO 8601 UTC, informational only
};

/// Serialize with sorted keys and shortest round-trip floats.
std::string to_json(const RunRecord& record);
RunRecord parse_run_record(const std::string& text);

std::string to_json(const ExpansionReport& report, const ReferenceConstants& constants,
                    const std::string& timestamp);

/// Write via a temporary file in the same directory, then rename.
void atomic_write(const std::filesystem::path& path, const std::string& content);

struct EnergyCsvRow {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double energy = 0.0;
    double min_separation = 0.0;
    bool converged = false;
};

/// Append one row, creating the file (with header) on first use.
/// Throws DomainError if a row with the same (n, seed) already exists:
/// the table is append-only and keyed by (n, seed).
void append_energy_row(const std::filesystem::path& csv, const EnergyCsvRow& row);

/// Parse the whole table; throws DomainError on missing file or bad rows.
std::vector<EnergyCsvRow> read_energy_rows(const std::filesystem::path& csv);

/// Current UTC time, ISO 8601 (second resolution).
std::string utc_timestamp();

} // namespace logsphere
