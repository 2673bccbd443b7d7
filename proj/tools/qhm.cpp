// Command-line job runner: qhm <jobfile.json> [--assert] [--out DIR] [--refine 129,257,513]

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "qhm/qhm.hpp"

namespace {

enum ExitCode { ok = 0, verification_failed = 1, config_error = 2, run_error = 3, io_error = 4 };

void configure_logging() {
    const char* env = std::getenv("QHM_LOG");
    const std::string level = env ? env : "error";
    if (level == "debug") {
        spdlog::set_level(spdlog::level::debug);
    } else if (level == "info") {
        spdlog::set_level(spdlog::level::info);
    } else {
        spdlog::set_level(spdlog::level::err);
        if (level != "error") spdlog::error("QHM_LOG: unknown level '{}', using error", level);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qhm::IoError("cannot open job file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-Hermitian metric verification jobs"};
    std::string job_file;
    bool assert_pass = false;
    std::string out_dir;
    std::vector<qhm::Index> refine;
    app.add_option("jobfile", job_file, "JSON job description")->required();
    app.add_flag("--assert", assert_pass, "exit with status 1 when a configured threshold is breached");
    app.add_option("--out", out_dir, "output directory (overrides output.dir)");
    app.add_option("--refine", refine, "grid refinement list, e.g. 129,257,513")->delimiter(',');
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : config_error;
    }
    configure_logging();

    std::string text;
    try {
        text = read_file(job_file);
    } catch (const qhm::IoError& e) {
        spdlog::error("{}", e.what());
        std::cerr << "IO_ERROR: " << e.what() << "\n";
        return io_error;
    }

    qhm::JobConfig cfg;
    try {
        cfg = qhm::parse_config(text);
        if (!refine.empty()) qhm::set_refine(cfg, refine);
    } catch (const qhm::ConfigError& e) {
        std::cerr << "CONFIG_ERROR: " << e.what() << "\n";
        return config_error;
    }
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    for (const auto& w : cfg.params.warnings()) spdlog::warn("{}", w);
    spdlog::info("running {} on {} grid(s)", qhm::to_string(cfg.job), cfg.grids().size());

    qhm::ReportDocument doc;
    try {
        doc = qhm::run_job(cfg);
    } catch (const qhm::IoError& e) {
        std::cerr << "IO_ERROR: " << e.what() << "\n";
        return io_error;
    } catch (const qhm::ConfigError& e) {
        std::cerr << "CONFIG_ERROR: " << e.what() << "\n";
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "RUN_ERROR: " << e.what() << "\n";
        return run_error;
    }
    spdlog::debug("results: {}", doc.results.dump());

    try {
        qhm::serialize_report(doc, cfg.output_dir);
    } catch (const qhm::IoError& e) {
        std::cerr << "IO_ERROR: " << e.what() << "\n";
        return io_error;
    }

    const std::string overall = doc.verdicts.at("overall").get<std::string>();
    std::cout << qhm::to_string(cfg.job) << ": " << overall << " (" << cfg.output_dir << "/report.json)\n";
    for (const auto& [name, v] : doc.verdicts.at("checks").items()) {
        std::cout << "  " << name << ": " << v.get<std::string>() << "\n";
    }
    if (assert_pass && overall == "FAIL") return verification_failed;
    return ok;
}
