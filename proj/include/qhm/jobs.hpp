#ifndef QHM_JOBS_HPP
#define QHM_JOBS_HPP

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "qhm/config.hpp"
#include "qhm/report.hpp"
#include "qhm/verify.hpp"

namespace qhm {

namespace detail {

using nlohmann::json;

inline json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
inline json num(cplx v) { return json::array({v.real(), v.imag()}); }

inline std::string verdict_of(bool pass) { return pass ? "PASS" : "FAIL"; }

inline json grid_json(const Grid& g) {
    return {{"n_points", g.n_points()}, {"p_max", g.p_max()}, {"mask_fraction", g.mask_fraction()}};
}

inline Operator build_model(const JobConfig& c, const Representation& rep) {
    if (c.model == ModelKind::bf) return build_swanson_bf(rep);
    return build_swanson_jr(build_ladder(rep), rep);
}

inline std::string row_verdict(const std::optional<double>& threshold, double value) {
    return threshold ? verdict_of(value < *threshold) : "NONE";
}

/// Accumulates per-grid results and the verdict on the largest grid.
struct JobOutput {
    json grids = json::array();
    json extra = json::object();
    std::vector<TableRow> rows;
    json checks = json::object();  ///< name -> PASS | FAIL for the largest grid
};

inline void run_verify_metric(const JobConfig& c, JobOutput& out) {
    const MetricSpec spec = parse_metric_label(c.metrics.front());
    std::vector<double> masked;
    for (const Grid& g : c.grids()) {
        const Representation rep(g, c.params, c.stencil);
        const Operator h = build_model(c, rep);
        const Operator rho = build_metric(spec, g, c.params);
        const double r = dieudonne_residual(h, rho);
        const double r_full = dieudonne_residual(h, rho, Masking::full);
        const HermitianCounterpart hc = hermitian_counterpart(h, rho);
        masked.push_back(r);
        out.grids.push_back({{"grid", grid_json(g)},
                             {"metric", spec.label()},
                             {"residual_masked", num(r)},
                             {"residual_unmasked", num(r_full)},
                             {"masked", true},
                             {"condition", num(metric_condition(rho))},
                             {"herm_residual", num(hc.herm_residual)}});
        out.rows.push_back({std::string(to_string(c.job)), c.metrics.front(), g.n_points(), c.params.tau, r,
                            row_verdict(c.threshold, r)});
    }
    json factors = json::array();
    for (std::size_t i = 1; i < masked.size(); ++i) factors.push_back(num(masked[i - 1] / masked[i]));
    out.extra["convergence_factors"] = factors;
    if (c.threshold) out.checks["residual"] = verdict_of(masked.back() < *c.threshold);
}

inline void run_compare_metrics(const JobConfig& c, JobOutput& out) {
    double first_last = 0.0;
    double ratio_last = 0.0;
    for (const Grid& g : c.grids()) {
        const Representation rep(g, c.params, c.stencil);
        const Operator h = build_model(c, rep);
        json residuals = json::object();
        std::vector<double> values;
        for (const std::string& label : c.metrics) {
            const Operator rho = build_metric(parse_metric_label(label), g, c.params);
            const double r = dieudonne_residual(h, rho);
            values.push_back(r);
            residuals[label] = {{"residual_masked", num(r)},
                                {"residual_unmasked", num(dieudonne_residual(h, rho, Masking::full))},
                                {"condition", num(metric_condition(rho))}};
            out.rows.push_back(
                {std::string(to_string(c.job)), label, g.n_points(), c.params.tau, r, row_verdict(c.threshold, r)});
        }
        std::size_t best = 0;
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (values[i] < values[best]) best = i;
        }
        json entry = {{"grid", grid_json(g)}, {"residuals", residuals}, {"favored", c.metrics[best]}};
        if (values.size() >= 2) {
            ratio_last = values[1] / values[0];
            entry["ratio"] = num(ratio_last);
        }
        first_last = values.front();
        out.grids.push_back(entry);
    }
    if (c.threshold) out.checks["residual"] = verdict_of(first_last < *c.threshold);
    if (c.min_ratio) out.checks["ratio"] = verdict_of(c.metrics.size() >= 2 && ratio_last >= *c.min_ratio);
}

inline void run_limit_sweep(const JobConfig& c, JobOutput& out) {
    const MetricSpec family = parse_metric_label(c.metrics.front());
    const MetricSpec reference = parse_metric_label(c.reference);
    SweepResult last;
    for (const Grid& g : c.grids()) {
        last = limit_sweep(family, c.tau_values, reference, g, c.params);
        json rows = json::array();
        for (const auto& r : last.rows) {
            rows.push_back({{"tau", r.tau}, {"distance", num(r.distance)}});
            out.rows.push_back({std::string(to_string(c.job)), last.family + " vs " + last.reference, g.n_points(),
                                r.tau, r.distance, row_verdict(c.threshold, r.distance)});
        }
        out.grids.push_back({{"grid", grid_json(g)},
                             {"family", last.family},
                             {"reference", last.reference},
                             {"rows", rows},
                             {"nonincreasing", last.nonincreasing},
                             {"decrease_factor", num(last.decrease_factor)}});
    }
    if (c.threshold) {
        out.checks["final_distance"] = verdict_of(last.rows.back().distance < *c.threshold);
        out.checks["monotone"] = verdict_of(last.nonincreasing);
    }
}

inline void run_model_equality(const JobConfig& c, JobOutput& out) {
    double unexplained = 0.0;
    for (const Grid& g : c.grids()) {
        const MappingReport m = swanson_mapping_report(g, c.params);
        json terms = json::object();
        for (const auto& t : m.equality.terms) terms[t.label] = num(t.coefficient);
        unexplained = m.equality.unexplained_fraction;
        out.grids.push_back({{"grid", grid_json(g)},
                             {"terms", terms},
                             {"difference_norm", num(m.equality.difference_norm)},
                             {"dictionary_rank", m.equality.rank},
                             {"unexplained_fraction", num(unexplained)},
                             {"mu_fitted", num(m.mu_fitted)},
                             {"mu_identified", num(m.mu_identified)},
                             {"mu_ladder_expansion", num(m.mu_ladder_expansion)},
                             {"identified_matches", m.identified_matches},
                             {"expansion_matches", m.expansion_matches},
                             {"commutator_coefficient", num(m.commutator_coefficient)}});
        out.rows.push_back({std::string(to_string(c.job)), "JR-vs-BF", g.n_points(), c.params.tau, unexplained,
                            row_verdict(c.threshold, unexplained)});
    }
    if (c.threshold) out.checks["unexplained"] = verdict_of(unexplained < *c.threshold);
}

inline void run_algebra_check(const JobConfig& c, JobOutput& out) {
    const QDeformParams qp = c.qdeform.params();
    double residual = 0.0;
    for (const Grid& g : c.grids()) {
        const Representation rep(g, c.params, c.stencil);
        const Ladder ladder = build_ladder(rep);
        const Operator n_op = default_number_operator(ladder, rep);
        residual = deformed_algebra_residual(rep.x(), rep.p(), n_op, qp, c.params);
        const Operator ref = (I_unit * c.params.hbar * qp.scale()) * Operator::identity(g);
        const double canonical = masked_relative_norm(commutator(rep.x(), rep.p()) - ref, ref);
        out.grids.push_back({{"grid", grid_json(g)}, {"residual", num(residual)}, {"canonical_residual", num(canonical)}});
        out.rows.push_back({std::string(to_string(c.job)), "q-commutator", g.n_points(), c.params.tau, residual,
                            row_verdict(c.threshold, residual)});
    }
    if (c.threshold) out.checks["residual"] = verdict_of(residual < *c.threshold);
}

inline void run_spectrum(const JobConfig& c, JobOutput& out) {
    double reality = 0.0;
    for (const Grid& g : c.grids()) {
        const Representation rep(g, c.params, c.stencil);
        const Operator h = build_model(c, rep);
        const SpectrumResult s = spectrum(h, c.k);
        json eig = json::array();
        for (cplx v : s.eigenvalues) eig.push_back(num(v));
        json entry = {{"grid", grid_json(g)},
                      {"eigenvalues", eig},
                      {"interior_mass", s.interior_mass},
                      {"reality_measure", num(s.reality_measure)}};
        if (!c.metrics.empty()) {
            const Operator rho = build_metric(parse_metric_label(c.metrics.front()), g, c.params);
            const SpectralCrossCheck x = cross_check_spectrum(h, rho, c.k);
            entry["cross_check"] = {{"metric", c.metrics.front()},
                                    {"counterpart", x.counterpart},
                                    {"max_discrepancy", num(x.max_discrepancy)},
                                    {"trusted", x.trusted}};
        }
        reality = s.reality_measure;
        out.grids.push_back(entry);
        out.rows.push_back({std::string(to_string(c.job)), c.metrics.empty() ? "-" : c.metrics.front(), g.n_points(),
                            c.params.tau, reality, row_verdict(c.threshold, reality)});
    }
    if (c.threshold) out.checks["reality"] = verdict_of(reality < *c.threshold);
}

inline void run_fit_metric(const JobConfig& c, JobOutput& out) {
    std::vector<MetricSpec> candidates;
    for (const auto& l : c.metrics) candidates.push_back(parse_metric_label(l));
    FitResult last;
    for (const Grid& g : c.grids()) {
        const Representation rep(g, c.params, c.stencil);
        const Operator h = build_model(c, rep);
        last = fit_diagonal_metric(h, c.params, candidates);
        json cands = json::object();
        std::vector<double> residuals;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const auto& cd = last.candidates[i];
            json e = {{"distance", num(cd.distance)}, {"available", cd.available}};
            if (cd.available) {
                const double r = dieudonne_residual(h, build_metric(candidates[i], g, c.params));
                e["dieudonne_residual"] = num(r);
                residuals.push_back(r);
            } else {
                e["note"] = cd.note;
            }
            cands[cd.label] = e;
        }
        json entry = {{"grid", grid_json(g)},
                      {"p", last.p},
                      {"profile", last.profile},
                      {"fit_residual", num(last.fit_residual)},
                      {"gap", num(last.gap)},
                      {"status", std::string(to_string(last.status))},
                      {"candidates", cands},
                      {"nearest", last.nearest},
                      {"log_quadratic", num(last.log_quadratic)}};
        if (residuals.size() >= 2) entry["residual_ratio"] = num(residuals[1] / residuals[0]);
        out.grids.push_back(entry);
        out.rows.push_back({std::string(to_string(c.job)), last.nearest.empty() ? "-" : last.nearest, g.n_points(),
                            c.params.tau, last.fit_residual, row_verdict(c.threshold, last.fit_residual)});
    }
    out.checks["status"] = verdict_of(last.status == FitStatus::valid);
    if (c.threshold) out.checks["fit_residual"] = verdict_of(last.fit_residual < *c.threshold);
}

} // namespace detail

/// Execute one job and collect its report. Numeric failures propagate as qhm::Error.
inline ReportDocument run_job(const JobConfig& c) {
    const auto start = std::chrono::steady_clock::now();
    detail::JobOutput out;
    switch (c.job) {
    case JobKind::verify_metric:
        detail::run_verify_metric(c, out);
        break;
    case JobKind::compare_metrics:
        detail::run_compare_metrics(c, out);
        break;
    case JobKind::limit_sweep:
        detail::run_limit_sweep(c, out);
        break;
    case JobKind::model_equality:
        detail::run_model_equality(c, out);
        break;
    case JobKind::algebra_check:
        detail::run_algebra_check(c, out);
        break;
    case JobKind::spectrum:
        detail::run_spectrum(c, out);
        break;
    case JobKind::fit_metric:
        detail::run_fit_metric(c, out);
        break;
    }

    ReportDocument doc;
    doc.config = to_json(c);
    doc.results = out.extra;
    doc.results["job"] = std::string(to_string(c.job));
    doc.results["grids"] = out.grids;
    doc.results["warnings"] = c.params.warnings();
    doc.table = std::move(out.rows);

    std::string overall = "NONE";
    if (!out.checks.empty()) {
        overall = "PASS";
        for (const auto& [name, v] : out.checks.items()) {
            if (v != "PASS") overall = "FAIL";
        }
    }
    doc.verdicts = {{"overall", overall}, {"checks", out.checks}};
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    doc.timings = {{"wall_seconds", secs}};
    return doc;
}

} // namespace qhm

#endif // QHM_JOBS_HPP
