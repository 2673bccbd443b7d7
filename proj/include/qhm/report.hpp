#ifndef QHM_REPORT_HPP
#define QHM_REPORT_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qhm/errors.hpp"

namespace qhm {

inline constexpr std::string_view toolkit_version = "0.1.0";

/// One line of tables.csv.
struct TableRow {
    std::string job;
    std::string metric;
    long long n_points = 0;
    double tau = 0.0;
    double residual = 0.0;
    std::string verdict;  ///< PASS | FAIL | NONE

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

inline void to_json(nlohmann::json& j, const TableRow& r) {
    j = {{"job", r.job},   {"metric", r.metric},     {"n_points", r.n_points},
         {"tau", r.tau},   {"residual", r.residual}, {"verdict", r.verdict}};
}

inline void from_json(const nlohmann::json& j, TableRow& r) {
    j.at("job").get_to(r.job);
    j.at("metric").get_to(r.metric);
    j.at("n_points").get_to(r.n_points);
    j.at("tau").get_to(r.tau);
    j.at("residual").get_to(r.residual);
    j.at("verdict").get_to(r.verdict);
}

/// Machine-readable outcome of one job. nlohmann::json objects keep keys
/// sorted, so serialization is deterministic for a fixed payload.
struct ReportDocument {
    std::string version{toolkit_version};
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    nlohmann::json verdicts = nlohmann::json::object();
    nlohmann::json timings = nlohmann::json::object();
    std::vector<TableRow> table;

    /// Everything except wall-clock timings.
    nlohmann::json payload() const {
        return {{"version", version}, {"config", config}, {"results", results}, {"verdicts", verdicts},
                {"table", table}};
    }
};

inline nlohmann::json to_json(const ReportDocument& d) {
    nlohmann::json results = d.results;
    results["table"] = d.table;
    return {{"version", d.version}, {"config", d.config}, {"results", results}, {"verdicts", d.verdicts},
            {"timings", d.timings}};
}

inline std::string serialize_report_json(const ReportDocument& d) { return to_json(d).dump(2) + "\n"; }

inline ReportDocument parse_report(std::string_view text) {
    ReportDocument d;
    try {
        const auto j = nlohmann::json::parse(text);
        d.version = j.at("version").get<std::string>();
        d.config = j.at("config");
        d.results = j.at("results");
        d.verdicts = j.at("verdicts");
        d.timings = j.at("timings");
        d.table = d.results.at("table").get<std::vector<TableRow>>();
        d.results.erase("table");
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("report: cannot parse: ") + e.what());
    }
    return d;
}

namespace detail {

inline std::string csv_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace detail

inline std::string serialize_table_csv(const ReportDocument& d) {
    std::string out = "job,metric,n_points,tau,residual,verdict\n";
    for (const auto& r : d.table) {
        out += detail::csv_field(r.job) + "," + detail::csv_field(r.metric) + "," + std::to_string(r.n_points) + "," +
               detail::csv_number(r.tau) + "," + detail::csv_number(r.residual) + "," + r.verdict + "\n";
    }
    return out;
}

/// Write report.json and tables.csv into `dir`, creating it if needed.
inline void serialize_report(const ReportDocument& d, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("report: cannot create directory " + dir.string() + ": " + ec.message());
    const auto write = [](const std::filesystem::path& path, const std::string& text) {
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("report: cannot open " + path.string() + " for writing");
        os << text;
        if (!os) throw IoError("report: write failed for " + path.string());
    };
    write(dir / "report.json", serialize_report_json(d));
    write(dir / "tables.csv", serialize_table_csv(d));
}

} // namespace qhm

#endif // QHM_REPORT_HPP
