#include <cmath>

#include <gtest/gtest.h>

#include "qhm/metrics.hpp"
#include "qhm/models.hpp"
#include "qhm/spectrum.hpp"
#include "qhm/verify.hpp"

using namespace qhm;

namespace {

PhysParams params(double mu, double tau = 0.0) {
    PhysParams pp;
    pp.mu = mu;
    pp.tau = tau;
    return pp;
}

Operator swanson(const Grid& g, const PhysParams& pp, SquareStencil s = SquareStencil::compact) {
    return build_swanson_bf(Representation(g, pp, s));
}

double residual(const Grid& g, const PhysParams& pp, const MetricSpec& m, SquareStencil s = SquareStencil::compact) {
    return dieudonne_residual(swanson(g, pp, s), build_metric(m, g, pp));
}

// Exponent of the diagonal metric for the undeformed model, from the
// Baker-Campbell-Hausdorff transform: theta* = 2 mu / omega^2.
double theta_star(double mu, double omega) { return 2.0 * mu / (omega * omega); }

// Frequency of the Hermitian counterpart (1/2 + 2 mu^2/omega^2) p^2 + omega^2 x^2 / 2.
double counterpart_frequency(double mu, double omega) { return std::sqrt(omega * omega + 4.0 * mu * mu); }

} // namespace

TEST(Oracle, ExponentAndFrequency) {
    EXPECT_DOUBLE_EQ(theta_star(0.1, 1.0), 0.2);
    EXPECT_DOUBLE_EQ(params(0.1).theta_star(), theta_star(0.1, 1.0));
    EXPECT_NEAR(counterpart_frequency(0.1, 1.0), 1.0198039027185568, 1e-15);
}

TEST(Dieudonne, VanishesForHermitianWithIdentity) {
    const Grid g = algebra_grid();
    EXPECT_EQ(residual(g, params(0.0), MetricSpec::identity()), 0.0);
}

TEST(Dieudonne, ScaleInvariantInTheMetric) {
    const Grid g = algebra_grid();
    const PhysParams pp = params(0.1);
    const Operator h = swanson(g, pp);
    const Operator rho = build_metric(MetricSpec::exp_theta(0.2), g, pp);
    const double r = dieudonne_residual(h, rho);
    for (double c : {1e-3, 7.3, 1e4}) EXPECT_NEAR(dieudonne_residual(h, cplx(c) * rho), r, 1e-12 * r);
}

TEST(Dieudonne, DenseAndDiagonalPathsAgree) {
    const Grid g(65, 6.0, 0.25);
    const PhysParams pp = params(0.1);
    const Operator h = swanson(g, pp);
    const Operator rho = build_metric(MetricSpec::exp_theta(0.2), g, pp);
    Eigen::MatrixXcd m = rho.matrix();
    m(1, 0) = m(0, 1) = 1e-300;  // forces the dense path
    const Operator dense(g, m);
    const double fast = dieudonne_residual(h, rho);
    const Operator defect = h.adjoint() * rho - rho * h;
    EXPECT_NEAR(fast, masked_norm(defect) / (masked_norm(h) * masked_norm(rho)), 1e-13 * fast);
    EXPECT_NEAR(fast, dieudonne_residual(h, dense), 1e-13 * fast);
}

TEST(Dieudonne, UndeformedGoldenResiduals) {
    // Pinned from the first run on the 513/10 grid.
    const Grid g = spectral_grid();
    const PhysParams pp = params(0.1);
    const double good = residual(g, pp, MetricSpec::exp_theta(theta_star(0.1, 1.0)));
    const double bad = residual(g, pp, MetricSpec::exp_theta(0.1));
    EXPECT_NEAR(good, 1.182e-6, 0.01e-6);
    EXPECT_NEAR(bad, 1.205e-3, 0.01e-3);
    EXPECT_GT(bad / good, 1e3);
}

TEST(Dieudonne, ConvergesAtSecondOrderForTheExactMetric) {
    const PhysParams pp = params(0.1);
    std::vector<double> r;
    for (Index n : {129, 257, 513}) r.push_back(residual(spectral_grid().with_points(n), pp, MetricSpec::exp_theta(0.2)));
    EXPECT_GE(r[0] / r[1], 3.0);
    EXPECT_GE(r[1] / r[2], 3.0);
}

TEST(Dieudonne, DiscriminationGrowsUnderRefinement) {
    const PhysParams pp = params(0.1);
    double previous = 0.0;
    for (Index n : {129, 257, 513}) {
        const Grid g(n, 10.0, 0.25);
        const double gap = residual(g, pp, MetricSpec::exp_theta(0.1)) / residual(g, pp, MetricSpec::exp_theta(0.2));
        EXPECT_GT(gap, 2.0 * previous);
        previous = gap;
    }
}

TEST(Dieudonne, ProductStencilDoesNotDiscriminate) {
    // X*X with the wide central stencil couples j and j +- 2 while {X,P}
    // couples j and j +- 1, so no diagonal metric intertwines the grid
    // operator and the correct and wrong exponents give similar residuals.
    const Grid g = spectral_grid();
    const PhysParams pp = params(0.1);
    const double good = residual(g, pp, MetricSpec::exp_theta(0.2), SquareStencil::product);
    const double bad = residual(g, pp, MetricSpec::exp_theta(0.1), SquareStencil::product);
    EXPECT_GT(good, 1e-3);
    EXPECT_LT(bad / good, 2.0);
}

TEST(Dieudonne, DeformWeightInvertsPositionNonHermiticity) {
    const Grid g = algebra_grid();
    const PhysParams pp = params(0.0, 0.1);
    const Representation rep(g, pp);
    const Operator eta = Operator::from_profile(g, [](double p) { return 1.0 / (1.0 + 0.1 * p * p); });
    EXPECT_LT(check_X_quasi_hermiticity(rep.x(), eta), 1e-14);
    EXPECT_GT(check_X_quasi_hermiticity(rep.x(), Operator::identity(g)), 1e-3);
}

TEST(Counterpart, IdentityMetricLeavesOperatorUnchanged) {
    const Grid g(65, 6.0, 0.25);
    const Operator h = swanson(g, params(0.1));
    const HermitianCounterpart hc = hermitian_counterpart(h, Operator::identity(g));
    EXPECT_EQ(hc.h.matrix(), h.matrix());
}

TEST(Counterpart, CorrectMetricGivesSmallResidualWrongMetricLarge) {
    const Grid g = spectral_grid();
    const PhysParams pp = params(0.1);
    const Operator h = swanson(g, pp);
    const double good = hermitian_counterpart(h, build_metric(MetricSpec::exp_theta(0.2), g, pp)).herm_residual;
    const double bad = hermitian_counterpart(h, build_metric(MetricSpec::exp_theta(0.1), g, pp)).herm_residual;
    EXPECT_LT(good, 1e-5);
    EXPECT_GT(bad, 1e-2);
}

TEST(Counterpart, JointConvergenceWithTheResidual) {
    const PhysParams pp = params(0.1);
    double prev_r = 1e300, prev_h = 1e300;
    for (Index n : {129, 257, 513}) {
        const Grid g = spectral_grid().with_points(n);
        const Operator h = swanson(g, pp);
        const Operator rho = build_metric(MetricSpec::exp_theta(0.2), g, pp);
        const double r = dieudonne_residual(h, rho);
        const double hr = hermitian_counterpart(h, rho).herm_residual;
        EXPECT_LT(r, prev_r);
        EXPECT_LT(hr, prev_h);
        prev_r = r;
        prev_h = hr;
    }
}

TEST(Counterpart, DenseMetricPathMatchesDiagonalPath) {
    const Grid g(65, 6.0, 0.25);
    const PhysParams pp = params(0.1);
    const Operator h = swanson(g, pp);
    const Operator rho = build_metric(MetricSpec::exp_theta(0.2), g, pp);
    Eigen::MatrixXcd perturbed = rho.matrix();
    perturbed(1, 0) = perturbed(0, 1) = 1e-300;  // forces the general path, numerically identical
    const HermitianCounterpart a = hermitian_counterpart(h, rho);
    const HermitianCounterpart b = hermitian_counterpart(h, Operator(g, perturbed));
    EXPECT_LT((a.h - b.h).matrix().norm() / a.h.matrix().norm(), 1e-10);
}

TEST(Spectrum, UpperTriangularTwoByTwo) {
    Eigen::MatrixXcd m(2, 2);
    m << 1.0, 1.0, 0.0, 2.0;
    const SpectrumResult s = lowest_eigenvalues(m, 2);
    ASSERT_EQ(s.eigenvalues.size(), 2u);
    EXPECT_NEAR(std::abs(s.eigenvalues[0] - cplx(1.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(s.eigenvalues[1] - cplx(2.0)), 0.0, 1e-14);
    EXPECT_EQ(s.reality_measure, 0.0);
}

TEST(Spectrum, HermitianOperatorIsReal) {
    const SpectrumResult s = spectrum(swanson(algebra_grid(), params(0.0)), 6);
    EXPECT_LT(s.reality_measure, 1e-10);
}

TEST(Spectrum, UndeformedModelMatchesCounterpartFrequency) {
    const Grid g = spectral_grid();
    const PhysParams pp = params(0.1);
    const Operator h = swanson(g, pp);
    const SpectrumResult s = spectrum(h, 6);
    ASSERT_EQ(s.eigenvalues.size(), 6u);
    const double w = counterpart_frequency(0.1, 1.0);
    for (std::size_t n = 0; n < 6; ++n) EXPECT_NEAR(s.eigenvalues[n].real(), w * (n + 0.5), 1e-2);
    EXPECT_LT(s.reality_measure, 1e-6);

    const SpectralCrossCheck x = cross_check_spectrum(h, build_metric(MetricSpec::exp_theta(0.2), g, pp), 6);
    EXPECT_TRUE(x.trusted);
    EXPECT_LT(x.max_discrepancy, 1e-6);
}

TEST(Spectrum, SimilarityPreservesLowLyingEigenvalues) {
    const Grid g = algebra_grid();
    const PhysParams pp = params(0.1);
    const Operator h = swanson(g, pp);
    const HermitianCounterpart hc = hermitian_counterpart(h, build_metric(MetricSpec::exp_theta(0.2), g, pp));
    const SpectrumResult a = spectrum(h, 6);
    const SpectrumResult b = spectrum(hc.h, 6);
    ASSERT_EQ(a.eigenvalues.size(), 6u);
    ASSERT_EQ(b.eigenvalues.size(), 6u);
    for (std::size_t n = 0; n < 6; ++n) EXPECT_LT(std::abs(a.eigenvalues[n] - b.eigenvalues[n]), 1e-6);
}

TEST(Fit, HermitianOperatorGivesConstantProfile) {
    const PhysParams pp = params(0.0);
    const FitResult f = fit_diagonal_metric(swanson(algebra_grid(), pp), pp, {MetricSpec::identity()});
    EXPECT_EQ(f.status, FitStatus::valid);
    EXPECT_LT(f.candidates.front().distance, 1e-8);
}

TEST(Fit, ProductStencilHermitianFitIsAmbiguous) {
    // The wide stencil decouples even and odd sites, leaving a two-dimensional null space.
    const PhysParams pp = params(0.0);
    const FitResult f = fit_diagonal_metric(swanson(algebra_grid(), pp, SquareStencil::product), pp);
    EXPECT_EQ(f.status, FitStatus::ambiguous);
    EXPECT_TRUE(f.nearest.empty());
}

TEST(Fit, UndeformedQuadraticCoefficient) {
    const PhysParams pp = params(0.1);
    const FitResult f = fit_diagonal_metric(swanson(algebra_grid(), pp), pp);
    EXPECT_EQ(f.status, FitStatus::valid);
    EXPECT_NEAR(f.log_quadratic, theta_star(0.1, 1.0), 1e-3);
    EXPECT_EQ(f.profile[static_cast<std::size_t>(algebra_grid().zero_index() - algebra_grid().interior_begin())], 1.0);
}

TEST(Fit, DeformedModelNearestIsTheDeformWeightedExponential) {
    const PhysParams pp = params(0.05, 0.01);
    const Grid g = algebra_grid();
    const Operator h = swanson(g, pp);
    const FitResult f = fit_diagonal_metric(h, pp);
    EXPECT_EQ(f.status, FitStatus::valid);
    EXPECT_EQ(f.nearest, "BF-composite");
    ASSERT_EQ(f.candidates.size(), 2u);
    // Distances pinned from the first run.
    EXPECT_NEAR(f.candidates[0].distance, 0.066, 2e-3);
    EXPECT_NEAR(f.candidates[1].distance, 0.576, 2e-3);
    const double ratio = dieudonne_residual(h, build_metric(MetricSpec::jr_composite(), g, pp)) /
                         dieudonne_residual(h, build_metric(MetricSpec::bf_composite(), g, pp));
    EXPECT_NEAR(ratio, 3.333, 2e-3);
}

TEST(Fit, DeformedModelProfileMatchesPowerLawMetric) {
    // For X = (1 + tau p^2) x0 the profile (1 + tau p^2)^{2 mu/(omega^2 tau) - 1}
    // intertwines H_BF in the continuum.
    const double mu = 0.05, tau = 0.01;
    const PhysParams pp = params(mu, tau);
    const Grid g = algebra_grid();
    const FitResult f = fit_diagonal_metric(swanson(g, pp), pp);
    Eigen::VectorXd fitted(static_cast<Index>(f.p.size())), exact(static_cast<Index>(f.p.size()));
    for (std::size_t i = 0; i < f.p.size(); ++i) {
        fitted[static_cast<Index>(i)] = f.profile[i];
        exact[static_cast<Index>(i)] = std::pow(1.0 + tau * f.p[i] * f.p[i], 2.0 * mu / tau - 1.0);
    }
    EXPECT_LT((fitted - exact).norm() / exact.norm(), 1e-3);
    const Operator rho = build_metric(MetricSpec::product({MetricSpec::deform_weight(), MetricSpec::jr(), MetricSpec::jr()}),
                                      g, pp);
    EXPECT_LT(dieudonne_residual(swanson(g, pp), rho), 1e-4);
}

TEST(Fit, TooSmallInteriorRejected) {
    const PhysParams pp = params(0.1);
    EXPECT_THROW((void)fit_diagonal_metric(swanson(Grid(13, 3.0, 0.25), pp), pp), PreconditionError);
}

TEST(Equality, IdenticalOperatorsHaveZeroCoefficients) {
    const Grid g(65, 6.0, 0.25);
    const Representation rep(g, params(0.1));
    const Operator h = build_swanson_bf(rep);
    const EqualityReport r = model_equality_report(h, h, rep);
    for (const auto& t : r.terms) EXPECT_LT(std::abs(t.coefficient), 1e-10) << t.label;
    EXPECT_EQ(r.unexplained_fraction, 0.0);
}

TEST(Equality, RecoversAConstantShift) {
    const Grid g(65, 6.0, 0.25);
    const Representation rep(g, params(0.1, 0.05));
    const Operator h = build_swanson_bf(rep);
    const EqualityReport r = model_equality_report(h + cplx(3.0) * Operator::identity(g), h, rep);
    EXPECT_NEAR(std::abs(r.coefficient("I") - cplx(3.0)), 0.0, 1e-10);
    for (const auto& t : r.terms) {
        if (t.label != "I") {
            EXPECT_LT(std::abs(t.coefficient), 1e-10) << t.label;
        }
    }
    EXPECT_LT(r.unexplained_fraction, 1e-12);
}

TEST(Equality, UndeformedDictionaryHasOneNullDirection) {
    // On the undeformed grid XP - PX = i I - (i h^2 / 2) X2 exactly on the interior.
    const Grid g = algebra_grid();
    const Representation rep(g, params(0.0));
    const Operator x2 = rep.x_squared();
    const double h = g.spacing();
    const Operator c = commutator(rep.x(), rep.p()) - I_unit * Operator::identity(g) + (I_unit * 0.5 * h * h) * x2;
    EXPECT_LT(masked_norm(c), 1e-10);
    const Operator d = build_swanson_bf(Representation(g, params(0.1)));
    EXPECT_EQ(model_equality_report(d, build_swanson_bf(rep), rep).rank, 7);
}

TEST(Equality, LadderMappingUsesHalfTheCouplingDifference) {
    PhysParams pp;
    pp.lambda = -0.05;
    pp.delta_t = 0.05;
    const MappingReport m = swanson_mapping_report(algebra_grid(), pp);
    EXPECT_DOUBLE_EQ(m.mu_identified, 0.1);
    EXPECT_DOUBLE_EQ(m.mu_ladder_expansion, 0.05);
    EXPECT_NEAR(m.mu_fitted, 0.05, 1e-10);
    EXPECT_FALSE(m.identified_matches);
    EXPECT_TRUE(m.expansion_matches);
    EXPECT_LT(m.equality.unexplained_fraction, 1e-8);
}

TEST(Equality, DeformedMappingResidualIsQuantified) {
    PhysParams pp;
    pp.lambda = -0.05;
    pp.delta_t = 0.05;
    pp.tau = 0.01;
    const MappingReport m = swanson_mapping_report(algebra_grid(), pp);
    EXPECT_TRUE(std::isfinite(m.equality.unexplained_fraction));
    EXPECT_NEAR(m.mu_fitted, 0.05, 1e-3);
}
