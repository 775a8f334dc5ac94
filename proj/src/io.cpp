#include "logsphere/io.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "logsphere/errors.hpp"

namespace logsphere {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw DomainError("csv: malformed number '" + s + "'");
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    return fields;
}

constexpr const char* kCsvHeader = "n,seed,energy,min_separation,converged";

} // namespace

std::string to_json(const RunRecord& record) {
    json j;
    j["n"] = record.n;
    j["seed"] = record.seed;
    j["energy"] = record.energy;
    j["grad_norm"] = record.grad_norm;
    j["min_separation"] = record.min_separation;
    j["converged"] = record.converged;
    j["iterations"] = record.iterations;
    j["options"] = {
        {"restarts", record.restarts}, {"max_iters", record.max_iters},
        {"grad_tol", record.grad_tol}, {"step0", record.step0},
        {"armijo_c", record.armijo_c}, {"shrink", record.shrink},
        {"init", record.init},
    };
    json pts = json::array();
    for (const SpherePoint& p : record.points) {
        pts.push_back({p.x, p.y, p.z});
    }
    j["points"] = std::move(pts);
    j["meta"] = {{"timestamp", record.timestamp}};
    return j.dump(2) + "\n";
}

namespace {

RunRecord parse_run_record_impl(const std::string& text) {
    const json j = json::parse(text);
    RunRecord r;
    r.n = j.at("n").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.energy = j.at("energy").get<double>();
    r.grad_norm = j.at("grad_norm").get<double>();
    r.min_separation = j.at("min_separation").get<double>();
    r.converged = j.at("converged").get<bool>();
    r.iterations = j.at("iterations").get<std::size_t>();
    const json& o = j.at("options");
    r.restarts = o.at("restarts").get<std::size_t>();
    r.max_iters = o.at("max_iters").get<std::size_t>();
    r.grad_tol = o.at("grad_tol").get<double>();
    r.step0 = o.at("step0").get<double>();
    r.armijo_c = o.at("armijo_c").get<double>();
    r.shrink = o.at("shrink").get<double>();
    r.init = o.at("init").get<std::string>();
    for (const json& p : j.at("points")) {
        r.points.push_back({p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
    }
    if (j.contains("meta") && j["meta"].contains("timestamp")) {
        r.timestamp = j["meta"]["timestamp"].get<std::string>();
    }
    return r;
}

} // namespace

RunRecord parse_run_record(const std::string& text) {
    try {
        return parse_run_record_impl(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("run record parse: ") + e.what());
    }
}

std::string to_json(const ExpansionReport& report, const ReferenceConstants& constants,
                    const std::string& timestamp) {
    json j;
    j["constants"] = {
        {"c_bhs", constants.c_bhs},
        {"w_tri_density1", constants.w_tri_density1},
        {"rsz_a", constants.rsz_a},
        {"rsz_b", constants.rsz_b},
        {"rsz_minw_lower", constants.rsz_minw_lower},
        {"rsz_c_lower", constants.rsz_c_lower},
    };
    j["conjectural_c"] = report.conjectural_c;
    j["rsz_lower_bound_c"] = report.rsz_lower_bound_c;
    j["gap_to_conjecture"] = report.gap_to_conjecture;
    j["fit"] = {
        {"c_hat", report.fit.c_hat},
        {"model", report.fit.model == FitModel::PowerLaw ? "power_law" : "plain_mean"},
        {"amp", report.fit.amp},
        {"exponent", report.fit.exponent},
        {"residual_norm", report.fit.residual_norm},
        {"n_min", report.fit.n_min},
        {"n_max", report.fit.n_max},
        {"lower_bound", report.fit.lower_bound},
        {"upper_bound", report.fit.upper_bound},
        {"slack_lo", report.fit.slack_lo},
        {"slack_hi", report.fit.slack_hi},
        {"within_bounds", report.fit.within_bounds},
    };
    json rows = json::array();
    for (const ReportRow& row : report.rows) {
        json r;
        r["n"] = row.n;
        r["e_min"] = row.e_min;
        r["r_n"] = row.r_n;
        if (row.renorm_over_npi.has_value()) {
            r["renorm_over_npi"] = *row.renorm_over_npi;
        } else {
            r["renorm_over_npi"] = nullptr;
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["meta"] = {{"timestamp", timestamp}};
    return j.dump(2) + "\n";
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path dir =
        path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    const std::filesystem::path tmp = dir / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw DomainError("atomic_write: cannot open " + tmp.string());
        }
        out << content;
        out.flush();
        if (!out) {
            throw DomainError("atomic_write: write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw DomainError("atomic_write: rename failed: " + ec.message());
    }
}

void append_energy_row(const std::filesystem::path& csv, const EnergyCsvRow& row) {
    if (std::filesystem::exists(csv)) {
        for (const EnergyCsvRow& existing : read_energy_rows(csv)) {
            if (existing.n == row.n && existing.seed == row.seed) {
                throw DomainError("energies table already has a row for n=" +
                                  std::to_string(row.n) + " seed=" + std::to_string(row.seed));
            }
        }
    } else {
        std::ofstream header(csv, std::ios::binary);
        if (!header) {
            throw DomainError("cannot create " + csv.string());
        }
        header << kCsvHeader << "\n";
    }
    std::ofstream out(csv, std::ios::binary | std::ios::app);
    if (!out) {
        throw DomainError("cannot append to " + csv.string());
    }
    out << row.n << ',' << row.seed << ',' << format_double(row.energy) << ','
        << format_double(row.min_separation) << ',' << (row.converged ? 1 : 0) << "\n";
}

std::vector<EnergyCsvRow> read_energy_rows(const std::filesystem::path& csv) {
    std::ifstream in(csv, std::ios::binary);
    if (!in) {
        throw DomainError("cannot open " + csv.string());
    }
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw DomainError("bad header in " + csv.string());
    }
    std::vector<EnergyCsvRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 5) {
            throw DomainError("bad row at line " + std::to_string(lineno) + " of " + csv.string());
        }
        EnergyCsvRow row;
        row.n = static_cast<std::size_t>(std::stoull(f[0]));
        row.seed = static_cast<std::uint64_t>(std::stoull(f[1]));
        row.energy = parse_double(f[2]);
        row.min_separation = parse_double(f[3]);
        row.converged = (f[4] == "1" || f[4] == "true");
        rows.push_back(row);
    }
    return rows;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf);
}

} // namespace logsphere
