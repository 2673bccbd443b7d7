#ifndef QHM_METRICS_HPP
#define QHM_METRICS_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qhm/metric_spec.hpp"
#include "qhm/operator.hpp"

namespace qhm {

/// Largest ratio max g / min g a built metric may have.
inline constexpr double metric_condition_limit = 1e14;

/// g(p_k) for every grid point. Throws NumericGuardError when the profile
/// would exceed the conditioning guard.
inline Eigen::VectorXd metric_profile(const MetricSpec& spec, const Grid& g, const PhysParams& pp) {
    pp.validate();
    Eigen::VectorXd logs(g.n_points());
    for (Index k = 0; k < g.n_points(); ++k) logs[k] = spec.log_value(g.point(k), pp);
    if (!logs.allFinite() || logs.maxCoeff() - logs.minCoeff() > std::log(metric_condition_limit)) {
        throw NumericGuardError("metric " + spec.label() + ": profile exceeds the 1e14 conditioning guard");
    }
    Eigen::VectorXd vals = logs.array().exp().matrix();
    if (!vals.allFinite() || !(vals.minCoeff() > 0.0)) {
        throw NumericGuardError("metric " + spec.label() + ": profile overflows double precision");
    }
    return vals;
}

inline Operator build_metric(const MetricSpec& spec, const Grid& g, const PhysParams& pp) {
    return Operator::diagonal(g, metric_profile(spec, g, pp).cast<cplx>());
}

/// max/min of the diagonal of a diagonal metric.
inline double metric_condition(const Operator& rho) {
    const Eigen::VectorXd d = rho.matrix().diagonal().real();
    return d.maxCoeff() / d.minCoeff();
}

/// Masked relative distance between two profiles after normalizing each to 1
/// at p = 0: ||g/g(0) - r/r(0)||_int / ||r/r(0)||_int.
inline double profile_distance(const Eigen::VectorXd& g, const Eigen::VectorXd& ref, const Grid& grid) {
    if (g.size() != grid.n_points() || ref.size() != grid.n_points()) {
        throw DimensionError("profile_distance: profiles must have n_points entries");
    }
    const Index z = grid.zero_index();
    const auto gi = g.segment(grid.interior_begin(), grid.interior_size()) / g[z];
    const auto ri = ref.segment(grid.interior_begin(), grid.interior_size()) / ref[z];
    return (gi - ri).norm() / ri.norm();
}

struct SweepRow {
    double tau;
    double distance;
};

struct SweepResult {
    std::string family;
    std::string reference;
    std::vector<SweepRow> rows;
    /// Distances never increase as tau decreases.
    bool nonincreasing = true;
    /// First distance divided by last distance.
    double decrease_factor = 0.0;
};

/// Distance of the family profile, built at each tau, to the reference profile.
inline SweepResult limit_sweep(const MetricSpec& family, const std::vector<double>& taus, const MetricSpec& reference,
                               const Grid& g, PhysParams pp) {
    if (taus.empty()) throw PreconditionError("limit_sweep: no tau values");
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (!(taus[i] > 0.0)) throw PreconditionError("limit_sweep: tau values must be positive");
        if (i > 0 && !(taus[i] < taus[i - 1])) throw PreconditionError("limit_sweep: tau values must decrease");
    }
    SweepResult out{family.label(), reference.label(), {}, true, 0.0};
    for (double tau : taus) {
        pp.tau = tau;
        const double d = profile_distance(metric_profile(family, g, pp), metric_profile(reference, g, pp), g);
        if (!out.rows.empty() && d > out.rows.back().distance) out.nonincreasing = false;
        out.rows.push_back({tau, d});
    }
    const double last = out.rows.back().distance;
    out.decrease_factor = last > 0.0 ? out.rows.front().distance / last : std::numeric_limits<double>::infinity();
    return out;
}

} // namespace qhm

#endif // QHM_METRICS_HPP
