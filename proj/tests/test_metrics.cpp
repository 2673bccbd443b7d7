#include <cmath>

#include <gtest/gtest.h>

#include "qhm/metrics.hpp"

using namespace qhm;

namespace {

PhysParams params(double mu, double tau = 0.0, double omega = 1.0) {
    PhysParams pp;
    pp.mu = mu;
    pp.tau = tau;
    pp.omega = omega;
    return pp;
}

void expect_profile(const MetricSpec& spec, const PhysParams& pp, double (*scalar)(double, const PhysParams&)) {
    const Grid g(129, 6.0, 0.25);
    const Eigen::VectorXd v = metric_profile(spec, g, pp);
    for (Index k = 0; k < g.n_points(); ++k) {
        const double expected = scalar(g.point(k), pp);
        EXPECT_NEAR(v[k], expected, 1e-14 * expected) << spec.label() << " at p = " << g.point(k);
    }
}

} // namespace

TEST(MetricProfile, MatchesScalarFormulas) {
    const PhysParams pp = params(0.1, 0.05, 1.3);
    expect_profile(MetricSpec::bf(), pp, [](double p, const PhysParams& q) { return std::exp(2.0 * q.mu * p * p); });
    expect_profile(MetricSpec::jr(), pp, [](double p, const PhysParams& q) {
        return std::pow(1.0 + q.tau * p * p, q.mu / (q.omega * q.omega * q.tau));
    });
    expect_profile(MetricSpec::exp_theta(0.2), pp, [](double p, const PhysParams&) { return std::exp(0.2 * p * p); });
    expect_profile(MetricSpec::exp_theta_mu(2.0), pp,
                   [](double p, const PhysParams& q) { return std::exp(2.0 * q.mu / (q.omega * q.omega) * p * p); });
    expect_profile(MetricSpec::deform_weight(), pp,
                   [](double p, const PhysParams& q) { return 1.0 / (1.0 + q.tau * p * p); });
    expect_profile(MetricSpec::bf_composite(), pp, [](double p, const PhysParams& q) {
        return std::exp(2.0 * q.mu / (q.omega * q.omega) * p * p) / (1.0 + q.tau * p * p);
    });
    expect_profile(MetricSpec::jr_composite(), pp, [](double p, const PhysParams& q) {
        return std::pow(1.0 + q.tau * p * p, q.mu / (q.omega * q.omega * q.tau)) / (1.0 + q.tau * p * p);
    });
}

TEST(MetricProfile, OppositeExponentsCancel) {
    const Grid g(129, 6.0, 0.25);
    const PhysParams pp = params(0.1);
    const Eigen::VectorXd v =
        metric_profile(MetricSpec::product({MetricSpec::exp_theta(0.3), MetricSpec::exp_theta(-0.3)}), g, pp);
    EXPECT_LT((v.array() - 1.0).abs().maxCoeff(), 1e-14);
}

TEST(MetricProfile, JRRequiresPositiveDeformation) {
    const Grid g(129, 6.0, 0.25);
    EXPECT_THROW((void)metric_profile(MetricSpec::jr(), g, params(0.1, 0.0)), PreconditionError);
    EXPECT_THROW((void)build_metric(MetricSpec::jr_composite(), g, params(0.1, 0.0)), PreconditionError);
}

TEST(MetricProfile, OverflowGuard) {
    EXPECT_THROW((void)build_metric(MetricSpec::exp_theta(5.0), Grid(129, 10.0, 0.25), params(0.1)),
                 NumericGuardError);
}

TEST(BuildMetric, PositiveDiagonalWithReportedCondition) {
    const Grid g(65, 4.0, 0.25);
    const Operator rho = build_metric(MetricSpec::exp_theta(0.2), g, params(0.1));
    const Eigen::MatrixXcd& m = rho.matrix();
    EXPECT_EQ((m - Eigen::MatrixXcd(m.diagonal().asDiagonal())).norm(), 0.0);
    EXPECT_GT(m.diagonal().real().minCoeff(), 0.0);
    EXPECT_NEAR(metric_condition(rho), std::exp(0.2 * 16.0), 1e-9 * std::exp(3.2));
}

TEST(MetricLabel, ParsesKnownForms) {
    EXPECT_EQ(parse_metric_label("BF"), MetricSpec::bf());
    EXPECT_EQ(parse_metric_label("JR"), MetricSpec::jr());
    EXPECT_EQ(parse_metric_label("DeformWeight"), MetricSpec::deform_weight());
    EXPECT_EQ(parse_metric_label("BF-composite"), MetricSpec::bf_composite());
    EXPECT_EQ(parse_metric_label("JR-composite"), MetricSpec::jr_composite());
    EXPECT_EQ(parse_metric_label("ExpTheta(0.2)"), MetricSpec::exp_theta(0.2));
    EXPECT_EQ(parse_metric_label("ExpTheta(2mu)"), MetricSpec::exp_theta_mu(2.0));
    EXPECT_EQ(parse_metric_label("ExpTheta(mu)"), MetricSpec::exp_theta_mu(1.0));
    EXPECT_EQ(parse_metric_label("DeformWeight*JR").kind, MetricSpec::Kind::product);
}

TEST(MetricLabel, LabelsRoundTrip) {
    for (const auto& s : {MetricSpec::bf(), MetricSpec::jr(), MetricSpec::exp_theta(0.2), MetricSpec::exp_theta_mu(2.0),
                          MetricSpec::bf_composite(), MetricSpec::jr_composite(),
                          MetricSpec::product({MetricSpec::deform_weight(), MetricSpec::exp_theta(-0.1)})}) {
        EXPECT_EQ(parse_metric_label(s.label()).label(), s.label());
    }
}

TEST(MetricLabel, RejectsMalformedLabels) {
    for (const char* bad : {"", "XY", "ExpTheta()", "ExpTheta(abc)", "ExpTheta(0.2", "BF**JR", "ExpTheta(inf)"}) {
        EXPECT_THROW((void)parse_metric_label(bad), PreconditionError) << bad;
    }
}

TEST(ProfileDistance, InvariantUnderNormalization) {
    const Grid g(129, 6.0, 0.25);
    const PhysParams pp = params(0.1, 0.01);
    const Eigen::VectorXd a = metric_profile(MetricSpec::jr(), g, pp);
    const Eigen::VectorXd b = metric_profile(MetricSpec::exp_theta(0.1), g, pp);
    const double d = profile_distance(a, b, g);
    EXPECT_GT(d, 0.0);
    EXPECT_NEAR(profile_distance(7.3 * a, b, g), d, 1e-14);
    EXPECT_NEAR(profile_distance(a, 7.3 * b, g), d, 1e-14);
    EXPECT_EQ(profile_distance(b, b, g), 0.0);
}

TEST(ScalarLimit, JRProfileTendsToHalfTheBFExponent) {
    // (1 + tau p^2)^{mu/(omega^2 tau)} -> exp(mu p^2 / omega^2) as tau -> 0.
    const double mu = 0.1, p = 2.0;
    const double limit = std::exp(mu * p * p);
    double previous = 1e300;
    for (double tau : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const double err = std::abs(std::pow(1.0 + tau * p * p, mu / tau) - limit);
        EXPECT_LT(err, previous);
        previous = err;
    }
    EXPECT_LT(previous / limit, 1e-3);
}

TEST(LimitSweep, JRConvergesToHalfExponentOnly) {
    const Grid g = algebra_grid();
    const PhysParams pp = params(0.1);
    const std::vector<double> taus{1e-1, 1e-2, 1e-3, 1e-4};
    const SweepResult half = limit_sweep(MetricSpec::jr(), taus, MetricSpec::exp_theta_mu(1.0), g, pp);
    EXPECT_TRUE(half.nonincreasing);
    EXPECT_GE(half.decrease_factor, 100.0);
    const SweepResult full = limit_sweep(MetricSpec::jr(), taus, MetricSpec::exp_theta_mu(2.0), g, pp);
    EXPECT_TRUE(full.nonincreasing);
    for (const auto& r : full.rows) EXPECT_GT(r.distance, 0.01);
    // Plateau value pinned from the first run.
    EXPECT_NEAR(full.rows.back().distance, 0.7329, 1e-3);
    EXPECT_EQ(full.family, "JR");
    EXPECT_EQ(full.reference, "ExpTheta(2mu)");
}

TEST(LimitSweep, RejectsBadTauLists) {
    const Grid g(65, 4.0, 0.25);
    const PhysParams pp = params(0.1);
    EXPECT_THROW((void)limit_sweep(MetricSpec::jr(), {}, MetricSpec::bf(), g, pp), PreconditionError);
    EXPECT_THROW((void)limit_sweep(MetricSpec::jr(), {1e-2, 1e-1}, MetricSpec::bf(), g, pp), PreconditionError);
    EXPECT_THROW((void)limit_sweep(MetricSpec::jr(), {1e-1, 0.0}, MetricSpec::bf(), g, pp), PreconditionError);
}
