#ifndef QHM_CONFIG_HPP
#define QHM_CONFIG_HPP

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qhm/grid.hpp"
#include "qhm/metric_spec.hpp"
#include "qhm/params.hpp"
#include "qhm/representation.hpp"

namespace qhm {

enum class JobKind { verify_metric, compare_metrics, limit_sweep, model_equality, algebra_check, spectrum, fit_metric };

inline std::string_view to_string(JobKind k) {
    switch (k) {
    case JobKind::verify_metric:
        return "verify-metric";
    case JobKind::compare_metrics:
        return "compare-metrics";
    case JobKind::limit_sweep:
        return "limit-sweep";
    case JobKind::model_equality:
        return "model-equality";
    case JobKind::algebra_check:
        return "algebra-check";
    case JobKind::spectrum:
        return "spectrum";
    case JobKind::fit_metric:
        return "fit-metric";
    }
    return "?";
}

/// Which Hamiltonian a job builds.
enum class ModelKind { bf, jr };

/// q-deformation block; f is selected by name.
struct QDeformConfig {
    double q = 1.0;
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 0.5;
    double delta = 1.0;
    std::string f = "zero";  ///< zero | one | identity

    QDeformParams params() const {
        QDeformParams qp{q, alpha, beta, gamma, delta, {}};
        if (f == "zero") {
            qp.f = [](double) { return 0.0; };
        } else if (f == "one") {
            qp.f = [](double) { return 1.0; };
        } else {
            qp.f = [](double t) { return t; };
        }
        return qp;
    }
};

struct JobConfig {
    JobKind job = JobKind::verify_metric;
    ModelKind model = ModelKind::bf;
    SquareStencil stencil = SquareStencil::compact;
    Grid grid = algebra_grid();
    std::vector<Index> refine;
    PhysParams params;
    std::vector<std::string> metrics;
    std::string reference;
    std::vector<double> tau_values{1e-1, 1e-2, 1e-3, 1e-4};
    std::optional<double> threshold;
    std::optional<double> min_ratio;
    Index k = 6;
    QDeformConfig qdeform;
    std::string output_dir = ".";

    /// Grids a job runs on: the refinement list, or the single configured grid.
    std::vector<Grid> grids() const {
        if (refine.empty()) return {grid};
        std::vector<Grid> out;
        for (Index n : refine) out.push_back(grid.with_points(n));
        return out;
    }
};

namespace detail {

inline void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed, std::string_view where) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
    }
}

inline double get_number(const nlohmann::json& obj, const char* key, double fallback, std::string_view where) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(std::string(where) + "." + key + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(std::string(where) + "." + key + ": must be finite");
    return d;
}

inline Index get_integer(const nlohmann::json& v, std::string_view where) {
    if (!v.is_number_integer()) throw ConfigError(std::string(where) + ": expected an integer");
    return v.get<Index>();
}

inline JobKind parse_job_kind(const std::string& s) {
    for (JobKind k : {JobKind::verify_metric, JobKind::compare_metrics, JobKind::limit_sweep, JobKind::model_equality,
                      JobKind::algebra_check, JobKind::spectrum, JobKind::fit_metric}) {
        if (to_string(k) == s) return k;
    }
    throw ConfigError("job: unknown job kind '" + s + "'");
}

inline void check_metric_label(const std::string& label) {
    try {
        (void)parse_metric_label(label);
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    }
}

} // namespace detail

/// Validate and install a refinement list (strictly increasing odd integers).
inline void set_refine(JobConfig& cfg, const std::vector<Index>& refine) {
    for (std::size_t i = 0; i < refine.size(); ++i) {
        if (refine[i] % 2 == 0) throw ConfigError("grid.refine: values must be odd");
        if (i > 0 && refine[i] <= refine[i - 1]) throw ConfigError("grid.refine: values must strictly increase");
        try {
            (void)cfg.grid.with_points(refine[i]);
        } catch (const PreconditionError& e) {
            throw ConfigError(e.what());
        }
    }
    cfg.refine = refine;
}

/// Parse and validate a JSON job file. Unknown keys are rejected at every level.
inline JobConfig parse_config(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    detail::reject_unknown(j, {"job", "model", "stencil", "grid", "params", "metric", "metrics", "reference",
                               "tau_values", "threshold", "min_ratio", "k", "qdeform", "output"},
                           "config");

    JobConfig cfg;
    if (!j.contains("job") || !j["job"].is_string()) throw ConfigError("config: 'job' (string) is required");
    cfg.job = detail::parse_job_kind(j["job"].get<std::string>());

    if (j.contains("model")) {
        const auto& m = j["model"];
        if (m == "BF") {
            cfg.model = ModelKind::bf;
        } else if (m == "JR") {
            cfg.model = ModelKind::jr;
        } else {
            throw ConfigError("config.model: expected \"BF\" or \"JR\"");
        }
    }
    if (j.contains("stencil")) {
        const auto& s = j["stencil"];
        if (s == "compact") {
            cfg.stencil = SquareStencil::compact;
        } else if (s == "product") {
            cfg.stencil = SquareStencil::product;
        } else {
            throw ConfigError("config.stencil: expected \"compact\" or \"product\"");
        }
    }

    if (j.contains("grid")) {
        const auto& g = j["grid"];
        detail::reject_unknown(g, {"n_points", "p_max", "mask_fraction", "refine"}, "grid");
        const Index n = g.contains("n_points") ? detail::get_integer(g["n_points"], "grid.n_points") : 257;
        const double p_max = detail::get_number(g, "p_max", 8.0, "grid");
        const double mask = detail::get_number(g, "mask_fraction", 0.25, "grid");
        if (n % 2 == 0) throw ConfigError("grid.n_points must be odd so that p = 0 is a sample");
        if (!(mask >= 0.0 && mask < 0.5)) throw ConfigError("grid.mask_fraction must lie in [0, 0.5)");
        try {
            cfg.grid = Grid(n, p_max, mask);
        } catch (const PreconditionError& e) {
            throw ConfigError(e.what());
        }
        if (g.contains("refine")) {
            if (!g["refine"].is_array()) throw ConfigError("grid.refine: expected an array");
            for (const auto& v : g["refine"]) cfg.refine.push_back(detail::get_integer(v, "grid.refine"));
        }
    }

    if (j.contains("params")) {
        const auto& p = j["params"];
        detail::reject_unknown(p, {"hbar", "mass", "omega", "mu", "lambda", "delta_t", "tau", "gamma_t"}, "params");
        PhysParams& pp = cfg.params;
        pp.hbar = detail::get_number(p, "hbar", pp.hbar, "params");
        pp.mass = detail::get_number(p, "mass", pp.mass, "params");
        pp.omega = detail::get_number(p, "omega", pp.omega, "params");
        pp.mu = detail::get_number(p, "mu", pp.mu, "params");
        pp.lambda = detail::get_number(p, "lambda", pp.lambda, "params");
        pp.delta_t = detail::get_number(p, "delta_t", pp.delta_t, "params");
        pp.tau = detail::get_number(p, "tau", pp.tau, "params");
        pp.gamma_t = detail::get_number(p, "gamma_t", pp.gamma_t, "params");
    }
    try {
        cfg.params.validate();
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    }

    if (j.contains("metric") && j.contains("metrics")) throw ConfigError("config: give 'metric' or 'metrics', not both");
    if (j.contains("metric")) {
        if (!j["metric"].is_string()) throw ConfigError("config.metric: expected a string");
        cfg.metrics.push_back(j["metric"].get<std::string>());
    }
    if (j.contains("metrics")) {
        if (!j["metrics"].is_array()) throw ConfigError("config.metrics: expected an array of strings");
        for (const auto& m : j["metrics"]) {
            if (!m.is_string()) throw ConfigError("config.metrics: expected an array of strings");
            cfg.metrics.push_back(m.get<std::string>());
        }
    }
    if (j.contains("reference")) {
        if (!j["reference"].is_string()) throw ConfigError("config.reference: expected a string");
        cfg.reference = j["reference"].get<std::string>();
    }
    if (j.contains("tau_values")) {
        if (!j["tau_values"].is_array()) throw ConfigError("config.tau_values: expected an array");
        cfg.tau_values.clear();
        for (const auto& v : j["tau_values"]) {
            if (!v.is_number() || !std::isfinite(v.get<double>())) {
                throw ConfigError("config.tau_values: expected finite numbers");
            }
            cfg.tau_values.push_back(v.get<double>());
        }
    }
    if (j.contains("threshold")) cfg.threshold = detail::get_number(j, "threshold", 0.0, "config");
    if (j.contains("min_ratio")) cfg.min_ratio = detail::get_number(j, "min_ratio", 0.0, "config");
    if (j.contains("k")) {
        cfg.k = detail::get_integer(j["k"], "config.k");
        if (cfg.k < 1) throw ConfigError("config.k must be positive");
    }
    if (j.contains("qdeform")) {
        const auto& q = j["qdeform"];
        detail::reject_unknown(q, {"q", "alpha", "beta", "gamma", "delta", "f"}, "qdeform");
        QDeformConfig& qc = cfg.qdeform;
        qc.q = detail::get_number(q, "q", qc.q, "qdeform");
        qc.alpha = detail::get_number(q, "alpha", qc.alpha, "qdeform");
        qc.beta = detail::get_number(q, "beta", qc.beta, "qdeform");
        qc.gamma = detail::get_number(q, "gamma", qc.gamma, "qdeform");
        qc.delta = detail::get_number(q, "delta", qc.delta, "qdeform");
        if (q.contains("f")) {
            if (!q["f"].is_string()) throw ConfigError("qdeform.f: expected a string");
            qc.f = q["f"].get<std::string>();
            if (qc.f != "zero" && qc.f != "one" && qc.f != "identity") {
                throw ConfigError("qdeform.f: expected zero, one or identity");
            }
        }
    }
    if (j.contains("output")) {
        const auto& o = j["output"];
        detail::reject_unknown(o, {"dir"}, "output");
        if (o.contains("dir")) {
            if (!o["dir"].is_string()) throw ConfigError("output.dir: expected a string");
            cfg.output_dir = o["dir"].get<std::string>();
        }
    }

    // Job-specific defaults.
    switch (cfg.job) {
    case JobKind::verify_metric:
        if (cfg.metrics.empty()) cfg.metrics = {"BF-composite"};
        break;
    case JobKind::compare_metrics:
    case JobKind::fit_metric:
        if (cfg.metrics.empty()) cfg.metrics = {"BF-composite", "JR-composite"};
        break;
    case JobKind::limit_sweep:
        if (cfg.metrics.empty()) cfg.metrics = {"JR"};
        if (cfg.reference.empty()) cfg.reference = "ExpTheta(1mu)";
        break;
    default:
        break;
    }
    for (const auto& m : cfg.metrics) detail::check_metric_label(m);
    if (!cfg.reference.empty()) detail::check_metric_label(cfg.reference);
    if (cfg.job == JobKind::verify_metric && cfg.metrics.size() != 1) {
        throw ConfigError("verify-metric takes exactly one metric");
    }
    if (cfg.job == JobKind::limit_sweep) {
        if (cfg.metrics.size() != 1) throw ConfigError("limit-sweep takes exactly one metric family");
        for (std::size_t i = 0; i < cfg.tau_values.size(); ++i) {
            if (!(cfg.tau_values[i] > 0.0) || (i > 0 && !(cfg.tau_values[i] < cfg.tau_values[i - 1]))) {
                throw ConfigError("tau_values must be positive and strictly decreasing");
            }
        }
        if (cfg.tau_values.empty()) throw ConfigError("tau_values must not be empty");
    }
    if (cfg.job == JobKind::algebra_check) {
        try {
            cfg.qdeform.params().validate();
        } catch (const PreconditionError& e) {
            throw ConfigError(e.what());
        }
    }
    set_refine(cfg, cfg.refine);
    return cfg;
}

/// Configuration echo with every default filled in.
inline nlohmann::json to_json(const JobConfig& c) {
    nlohmann::json j;
    j["job"] = std::string(to_string(c.job));
    j["model"] = c.model == ModelKind::bf ? "BF" : "JR";
    j["stencil"] = c.stencil == SquareStencil::compact ? "compact" : "product";
    j["grid"] = {{"n_points", c.grid.n_points()},
                 {"p_max", c.grid.p_max()},
                 {"mask_fraction", c.grid.mask_fraction()},
                 {"refine", c.refine}};
    const PhysParams& p = c.params;
    j["params"] = {{"hbar", p.hbar},     {"mass", p.mass},       {"omega", p.omega}, {"mu", p.mu},
                   {"lambda", p.lambda}, {"delta_t", p.delta_t}, {"tau", p.tau},     {"gamma_t", p.gamma_t}};
    j["metrics"] = c.metrics;
    if (!c.reference.empty()) j["reference"] = c.reference;
    if (c.job == JobKind::limit_sweep) j["tau_values"] = c.tau_values;
    if (c.threshold) j["threshold"] = *c.threshold;
    if (c.min_ratio) j["min_ratio"] = *c.min_ratio;
    j["k"] = c.k;
    if (c.job == JobKind::algebra_check) {
        const QDeformConfig& q = c.qdeform;
        j["qdeform"] = {{"q", q.q}, {"alpha", q.alpha}, {"beta", q.beta},
                        {"gamma", q.gamma}, {"delta", q.delta}, {"f", q.f}};
    }
    return j;
}

} // namespace qhm

#endif // QHM_CONFIG_HPP
