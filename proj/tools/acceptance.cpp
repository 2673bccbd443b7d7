// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qhm/qhm.hpp"

using namespace qhm;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s | %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

PhysParams swanson(double mu, double tau = 0.0, double gamma_t = 0.0) {
    PhysParams pp;
    pp.mu = mu;
    pp.tau = tau;
    pp.gamma_t = gamma_t;
    return pp;
}

Operator bf(const Grid& g, const PhysParams& pp) { return build_swanson_bf(Representation(g, pp)); }

void commutator_exactness() {
    const Grid g = algebra_grid();
    double worst = 0.0;
    for (double tau : {0.0, 0.01, 0.1}) {
        for (double gt : {0.0, 0.3}) {
            const Representation rep(g, swanson(0.0, tau, gt));
            Eigen::VectorXcd w(g.n_points());
            for (Index k = 0; k < g.n_points(); ++k) w[k] = deform_weight(tau, g.point(k));
            const Operator rhs = (I_unit * rep.params().hbar) * Operator::diagonal(g, w);
            worst = std::max(worst, masked_relative_norm(commutator(rep.x(), rep.p()) - rhs, rhs));
        }
    }
    report(1, "deformed commutator exactness", worst < 1e-13, fmt("max residual %.3e (tol 1e-13)", worst));
}

void undeformed_metric() {
    const Grid g = spectral_grid();
    const PhysParams pp = swanson(0.1);
    const Operator h = bf(g, pp);
    const double good = dieudonne_residual(h, build_metric(MetricSpec::exp_theta(0.2), g, pp));
    const double bad = dieudonne_residual(h, build_metric(MetricSpec::exp_theta(0.1), g, pp));
    const bool pass = good < 1e-6 && bad > 1e-2 && bad / good > 1e4;
    report(2, "undeformed metric correctness", pass,
           fmt("exp(0.2p^2) %.3e (tol <1e-6), ", good) + fmt("exp(0.1p^2) %.3e (tol >1e-2), ", bad) +
               fmt("gap %.3e (tol >1e4)", bad / good));
}

void limit_sweep_verdict() {
    const Grid g = algebra_grid();
    const PhysParams pp = swanson(0.1);
    const std::vector<double> taus{1e-1, 1e-2, 1e-3, 1e-4};
    const SweepResult to_bf = limit_sweep(MetricSpec::jr(), taus, MetricSpec::exp_theta_mu(2.0), g, pp);
    const SweepResult to_half = limit_sweep(MetricSpec::jr(), taus, MetricSpec::exp_theta_mu(1.0), g, pp);
    double plateau = 1e300;
    for (const auto& r : to_bf.rows) plateau = std::min(plateau, r.distance);
    const bool pass = plateau > 0.01 && to_half.nonincreasing && to_half.decrease_factor >= 100.0;
    report(3, "limit sweep", pass,
           fmt("min distance to ExpTheta(2mu) %.4f (tol >0.01), ", plateau) +
               fmt("decrease to ExpTheta(mu) %.1fx (tol >=100)", to_half.decrease_factor) +
               (to_half.nonincreasing ? ", monotone" : ", not monotone"));
}

void counterpart_and_spectrum() {
    const Grid g = spectral_grid();
    const PhysParams pp = swanson(0.1);
    const Operator h = bf(g, pp);
    const HermitianCounterpart hc = hermitian_counterpart(h, build_metric(MetricSpec::exp_theta(0.2), g, pp));
    const SpectrumResult s = spectrum(h, 6);
    const double omega = std::sqrt(1.04);
    double err = s.eigenvalues.size() == 6 ? 0.0 : 1e300;
    for (std::size_t n = 0; n < s.eigenvalues.size(); ++n) {
        err = std::max(err, std::abs(s.eigenvalues[n].real() - omega * (static_cast<double>(n) + 0.5)));
    }
    const bool pass = hc.herm_residual < 1e-6 && err < 1e-2 && s.reality_measure < 1e-6;
    report(4, "hermitian counterpart and spectrum", pass,
           fmt("herm_residual %.3e (tol <1e-6), ", hc.herm_residual) + fmt("eigenvalue error %.3e (tol 1e-2), ", err) +
               fmt("reality %.3e (tol <1e-6)", s.reality_measure));
}

void metric_fitting() {
    const Grid g = algebra_grid();
    const FitResult undeformed = fit_diagonal_metric(bf(g, swanson(0.1)), swanson(0.1));
    const double coef = undeformed.log_quadratic;
    const FitResult herm = fit_diagonal_metric(bf(g, swanson(0.0)), swanson(0.0), {MetricSpec::identity()});
    const double const_dist = herm.candidates.front().distance;

    const PhysParams dp = swanson(0.05, 0.01);
    const Operator h = bf(g, dp);
    const FitResult deformed = fit_diagonal_metric(h, dp);
    const double ratio = dieudonne_residual(h, build_metric(MetricSpec::jr_composite(), g, dp)) /
                         dieudonne_residual(h, build_metric(MetricSpec::bf_composite(), g, dp));
    const bool pass = std::abs(coef - 0.2) <= 1e-3 && herm.status == FitStatus::valid && const_dist < 1e-8 &&
                      deformed.nearest == "BF-composite" && ratio >= 10.0;
    report(5, "metric fitting", pass,
           fmt("quadratic coefficient %.5f (0.200 +- 1e-3), ", coef) +
               fmt("hermitian profile distance to constant %.3e (tol 1e-8), ", const_dist) + "nearest " +
               deformed.nearest + fmt(", JR-composite/BF-composite residual ratio %.3f (tol >=10)", ratio));
}

void gauge_irrelevance() {
    const Grid g = spectral_grid();
    double worst = 0.0;
    bool complete = true;
    for (double tau : {0.01, 0.1}) {
        const SpectrumResult a = spectrum(bf(g, swanson(0.1, tau, 0.3)), 6);
        const SpectrumResult b = spectrum(bf(g, swanson(0.1, tau, 0.0)), 6);
        if (a.eigenvalues.size() != 6 || b.eigenvalues.size() != 6) complete = false;
        for (std::size_t n = 0; n < std::min(a.eigenvalues.size(), b.eigenvalues.size()); ++n) {
            worst = std::max(worst, std::abs(a.eigenvalues[n] - b.eigenvalues[n]));
        }
    }
    report(6, "gauge irrelevance", complete && worst < 1e-6, fmt("max eigenvalue shift %.3e (tol 1e-6)", worst));
}

void algebra_reduction() {
    const Grid g = algebra_grid();
    double worst = 0.0;
    for (double tau : {0.0, 0.1}) {
        const PhysParams pp = swanson(0.0, tau);
        const Representation rep(g, pp);
        const Operator n_op = default_number_operator(build_ladder(rep), rep);
        const QDeformParams qp;  // q = 1, alpha = delta = 1, gamma = 1/2, beta = 0
        const double deformed = deformed_algebra_residual(rep.x(), rep.p(), n_op, qp, pp);
        const Operator ref = (I_unit * pp.hbar) * Operator::identity(g);
        const double canonical = masked_relative_norm(commutator(rep.x(), rep.p()) - ref, ref);
        worst = std::max(worst, std::abs(deformed - canonical) / std::max(canonical, 1e-300));
    }
    bool rejected = false;
    {
        const Representation rep(g, swanson(0.0));
        QDeformParams bad;
        bad.gamma = 0.5 + 2e-12;
        try {
            (void)deformed_algebra_residual(rep.x(), rep.p(), Operator::identity(g), bad, rep.params());
        } catch (const PreconditionError&) {
            rejected = true;
        }
    }
    report(7, "algebra checker reduction", worst < 1e-14 && rejected,
           fmt("relative difference to canonical residual %.3e (tol 1e-14), ", worst) +
               (rejected ? "constraint violation rejected" : "constraint violation NOT rejected"));
}

void model_equality() {
    PhysParams pp;
    pp.lambda = -0.05;
    pp.delta_t = 0.05;
    const MappingReport m = swanson_mapping_report(algebra_grid(), pp);
    const double u = m.equality.unexplained_fraction;
    report(8, "model equality mapping", u < 1e-8 && std::isfinite(m.mu_fitted),
           fmt("unexplained %.3e (tol 1e-8), ", u) + fmt("fitted mu* %.10f, ", m.mu_fitted) +
               fmt("stated mapping %.4f ", m.mu_identified) + (m.identified_matches ? "(matches)" : "(mismatch)") +
               fmt(", ladder expansion %.4f ", m.mu_ladder_expansion) + (m.expansion_matches ? "(matches)" : "(mismatch)"));
}

void convergence() {
    const PhysParams pp = swanson(0.1);
    std::vector<double> r;
    for (Index n : {129, 257, 513}) {
        const Grid g = spectral_grid().with_points(n);
        r.push_back(dieudonne_residual(bf(g, pp), build_metric(MetricSpec::exp_theta(0.2), g, pp)));
    }
    const double f1 = r[0] / r[1];
    const double f2 = r[1] / r[2];
    report(9, "grid convergence", f1 >= 3.0 && f2 >= 3.0,
           fmt("residuals %.3e", r[0]) + fmt(" / %.3e", r[1]) + fmt(" / %.3e, ", r[2]) +
               fmt("factors %.2f", f1) + fmt(", %.2f (tol >=3)", f2));
}

} // namespace

int main() {
    const auto run = [](int id, void (*fn)()) {
        try {
            fn();
        } catch (const std::exception& e) {
            report(id, "error", false, e.what());
        }
    };
    run(1, commutator_exactness);
    run(2, undeformed_metric);
    run(3, limit_sweep_verdict);
    run(4, counterpart_and_spectrum);
    run(5, metric_fitting);
    run(6, gauge_irrelevance);
    run(7, algebra_reduction);
    run(8, model_equality);
    run(9, convergence);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
