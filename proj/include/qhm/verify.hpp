#ifndef QHM_VERIFY_HPP
#define QHM_VERIFY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/SVD>

#include "qhm/matrix_function.hpp"
#include "qhm/metrics.hpp"
#include "qhm/models.hpp"
#include "qhm/spectrum.hpp"

namespace qhm {

// ---------------------------------------------------------------------------
// Quasi-Hermiticity residuals
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_diagonal(const Eigen::MatrixXcd& m) {
    for (Index c = 0; c < m.cols(); ++c) {
        for (Index r = 0; r < m.rows(); ++r) {
            if (r != c && m(r, c) != cplx(0.0)) return false;
        }
    }
    return true;
}

/// A^dagger rho - rho A, using row/column scaling when rho is diagonal.
inline Eigen::MatrixXcd intertwining_defect(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& rho) {
    if (is_diagonal(rho)) {
        const Eigen::VectorXcd d = rho.diagonal();
        return a.adjoint() * d.asDiagonal() - d.asDiagonal() * a;
    }
    return a.adjoint() * rho - rho * a;
}

} // namespace detail

/// True when rho is Hermitian with a strictly positive spectrum (diagonal fast path).
inline bool is_positive_metric(const Operator& rho) {
    const Eigen::MatrixXcd& m = rho.matrix();
    if (detail::is_diagonal(m)) {
        return (m.diagonal().imag().array() == 0.0).all() && (m.diagonal().real().array() > 0.0).all();
    }
    if ((m - m.adjoint()).norm() > 1e-10 * m.norm()) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.info() == Eigen::Success && es.eigenvalues().minCoeff() > 0.0;
}

/// ||H^dagger rho - rho H|| / (||H|| ||rho||), masked by default.
inline double dieudonne_residual(const Operator& h, const Operator& rho, Masking m = Masking::interior) {
    h.check_compatible(rho);
    const Operator defect(h.grid(), detail::intertwining_defect(h.matrix(), rho.matrix()));
    return masked_relative_norm(defect, m, h, rho);
}

/// ||X^dagger eta - eta X|| / (||X|| ||eta||), masked by default.
inline double check_X_quasi_hermiticity(const Operator& x, const Operator& eta, Masking m = Masking::interior) {
    return dieudonne_residual(x, eta, m);
}

struct HermitianCounterpart {
    Operator h;
    /// Masked ||h - h^dagger|| / ||h||.
    double herm_residual;
};

/// h = rho^{1/2} H rho^{-1/2}.
inline HermitianCounterpart hermitian_counterpart(const Operator& h, const Operator& rho) {
    h.check_compatible(rho);
    Operator root = Operator::zero(h.grid());
    Operator inv_root = Operator::zero(h.grid());
    if (detail::is_diagonal(rho.matrix())) {
        const Eigen::VectorXd d = rho.matrix().diagonal().real();
        if (!(d.minCoeff() > 0.0) || !(rho.matrix().diagonal().imag().array() == 0.0).all()) {
            throw PreconditionError("hermitian_counterpart: metric must be positive");
        }
        if (d.maxCoeff() > metric_condition_limit * d.minCoeff()) {
            throw NumericGuardError("hermitian_counterpart: metric exceeds the 1e14 conditioning guard");
        }
        root = Operator::diagonal(h.grid(), d.array().sqrt().cast<cplx>().matrix());
        inv_root = Operator::diagonal(h.grid(), d.array().rsqrt().cast<cplx>().matrix());
    } else {
        root = matrix_power(rho, 0.5);
        inv_root = matrix_power(rho, -0.5);
    }
    Operator hc = root * h * inv_root;
    const double r = masked_relative_norm(hc - hc.adjoint(), hc);
    return {std::move(hc), r};
}

struct SpectralCrossCheck {
    SpectrumResult direct;
    std::vector<double> counterpart;
    double max_discrepancy = 0.0;
    /// Direct spectrum agrees with the Hermitian counterpart within 1e-3.
    bool trusted = false;
};

/// Compare the direct (non-normal) spectrum with that of the Hermitian counterpart.
inline SpectralCrossCheck cross_check_spectrum(const Operator& h, const Operator& rho, Index k) {
    SpectralCrossCheck out;
    out.direct = spectrum(h, k);
    out.counterpart = hermitian_spectrum(hermitian_counterpart(h, rho).h, k);
    const std::size_t n = std::min(out.direct.eigenvalues.size(), out.counterpart.size());
    for (std::size_t i = 0; i < n; ++i) {
        out.max_discrepancy = std::max(out.max_discrepancy, std::abs(out.direct.eigenvalues[i] - out.counterpart[i]));
    }
    out.trusted = n == static_cast<std::size_t>(k) && out.max_discrepancy <= 1e-3;
    return out;
}

// ---------------------------------------------------------------------------
// Diagonal metric recovery
// ---------------------------------------------------------------------------

enum class FitStatus { valid, ambiguous, invalid };

inline std::string_view to_string(FitStatus s) {
    switch (s) {
    case FitStatus::valid:
        return "VALID";
    case FitStatus::ambiguous:
        return "AMBIGUOUS";
    case FitStatus::invalid:
        return "INVALID";
    }
    return "?";
}

struct CandidateDistance {
    std::string label;
    bool available = false;
    double distance = std::numeric_limits<double>::quiet_NaN();
    std::string note;
};

struct FitResult {
    std::vector<double> p;        ///< interior momenta
    std::vector<double> profile;  ///< fitted g(p), g(0) = 1
    double fit_residual = 0.0;    ///< sigma_min / sigma_max
    double gap = 0.0;             ///< (sigma_2 - sigma_min) / sigma_max
    FitStatus status = FitStatus::invalid;
    std::vector<CandidateDistance> candidates;
    std::string nearest;
    /// c2 of the least-squares fit log g = c0 + c2 p^2 (VALID fits only).
    double log_quadratic = std::numeric_limits<double>::quiet_NaN();
};

inline std::vector<MetricSpec> default_fit_candidates() {
    return {MetricSpec::bf_composite(), MetricSpec::jr_composite()};
}

/// Recover the diagonal metric of H on the interior block: the unit vector g
/// minimizing ||H^dagger diag(g) - diag(g) H|| restricted to interior rows and
/// columns, taken from the smallest singular pair of the linear map g -> defect.
inline FitResult fit_diagonal_metric(const Operator& h, const PhysParams& pp,
                                     const std::vector<MetricSpec>& candidates = default_fit_candidates()) {
    const Grid& grid = h.grid();
    const Index b = grid.interior_begin();
    const Index m = grid.interior_size();
    if (m < 8) throw PreconditionError("fit_diagonal_metric: interior needs at least 8 points");
    const Eigen::MatrixXcd& a = h.matrix();

    // Entry (j,k) of the defect is conj(H_kj) g_k - H_jk g_j, and entry (k,j)
    // is minus its conjugate, so pairs j <= k suffice.
    std::vector<std::array<cplx, 2>> coeffs;
    std::vector<std::array<Index, 2>> cols;
    for (Index j = 0; j < m; ++j) {
        for (Index k = j; k < m; ++k) {
            const cplx hjk = a(b + j, b + k);
            const cplx hkj = a(b + k, b + j);
            if (hjk == cplx(0.0) && hkj == cplx(0.0)) continue;
            coeffs.push_back({std::conj(hkj), -hjk});
            cols.push_back({k, j});
        }
    }
    Eigen::MatrixXd lmap = Eigen::MatrixXd::Zero(2 * static_cast<Index>(coeffs.size()), m);
    for (std::size_t r = 0; r < coeffs.size(); ++r) {
        const Index row = 2 * static_cast<Index>(r);
        for (int t = 0; t < 2; ++t) {
            lmap(row, cols[r][t]) += coeffs[r][t].real();
            lmap(row + 1, cols[r][t]) += coeffs[r][t].imag();
        }
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(lmap, Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv.size() < m || !(sv[0] > 0.0)) throw NumericGuardError("fit_diagonal_metric: degenerate defect map");
    FitResult out;
    out.fit_residual = sv[m - 1] / sv[0];
    out.gap = (sv[m - 2] - sv[m - 1]) / sv[0];

    Eigen::VectorXd g = svd.matrixV().col(m - 1);
    const Index z = grid.zero_index() - b;
    if (g[z] < 0.0) g = -g;
    if (out.gap < 1e-8) {
        out.status = FitStatus::ambiguous;
    } else if (!(g.minCoeff() > 0.0)) {
        out.status = FitStatus::invalid;
    } else {
        out.status = FitStatus::valid;
    }
    if (g[z] != 0.0) g /= g[z];

    out.p.resize(static_cast<std::size_t>(m));
    out.profile.resize(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i) {
        out.p[static_cast<std::size_t>(i)] = grid.point(b + i);
        out.profile[static_cast<std::size_t>(i)] = g[i];
    }

    if (out.status == FitStatus::valid) {
        Eigen::MatrixXd design(m, 2);
        Eigen::VectorXd logs(m);
        for (Index i = 0; i < m; ++i) {
            const double p = grid.point(b + i);
            design(i, 0) = 1.0;
            design(i, 1) = p * p;
            logs[i] = std::log(g[i]);
        }
        out.log_quadratic = design.colPivHouseholderQr().solve(logs)[1];
    }

    double best = std::numeric_limits<double>::infinity();
    for (const auto& spec : candidates) {
        CandidateDistance cd;
        cd.label = spec.label();
        try {
            const Eigen::VectorXd ref = metric_profile(spec, grid, pp).segment(b, m);
            const Eigen::VectorXd rn = ref / ref[z];
            cd.distance = (g - rn).norm() / rn.norm();
            cd.available = true;
            // Ambiguous or invalid fits report distances but never pick a candidate.
            if (out.status == FitStatus::valid && cd.distance < best) {
                best = cd.distance;
                out.nearest = cd.label;
            }
        } catch (const Error& e) {
            cd.note = e.what();
        }
        out.candidates.push_back(std::move(cd));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Model equality
// ---------------------------------------------------------------------------

struct EqualityTerm {
    std::string label;
    cplx coefficient;
};

struct EqualityReport {
    std::vector<EqualityTerm> terms;
    double difference_norm = 0.0;       ///< masked ||H1 - H2||
    double unexplained_fraction = 0.0;  ///< masked ||D - fit|| / ||D||
    /// Numerical rank of the realized dictionary. On a uniform grid the
    /// discrete commutator ties XP - PX to I and X2, so full rank is not
    /// guaranteed; coefficients are then the minimum-norm solution.
    Index rank = 0;
    /// Columns span the null space of the dictionary (coefficient directions
    /// that leave the fitted operator unchanged).
    Eigen::MatrixXcd null_space;

    cplx coefficient(std::string_view label) const {
        for (const auto& t : terms) {
            if (t.label == label) return t.coefficient;
        }
        throw PreconditionError("equality report: no term " + std::string(label));
    }
};

/// Monomial dictionary used to decompose Hamiltonian differences.
inline std::vector<std::pair<std::string, Polynomial>> equality_dictionary() {
    const auto m = [](std::string_view w) { return Polynomial::monomial(w); };
    return {
        {"I", Polynomial::constant(1.0)},
        {"P", m("P")},
        {"P2", m("PP")},
        {"P4", m("PPPP")},
        {"X2", m("XX")},
        {"XP", m("XP")},
        {"PX", m("PX")},
        {"X2P2_sym", 0.5 * (m("XXPP") + m("PPXX"))},
    };
}

/// Least-squares decomposition of H1 - H2 over the monomial dictionary,
/// realized in `rep`, using interior entries only.
inline EqualityReport model_equality_report(const Operator& h1, const Operator& h2, const Representation& rep) {
    h1.check_compatible(h2);
    if (!(h1.grid() == rep.grid())) throw DimensionError("model_equality_report: representation grid differs");
    const Operator diff = h1 - h2;
    const auto block = diff.interior_block();
    const Index m = block.rows();
    const auto dict = equality_dictionary();

    const Index cols = static_cast<Index>(dict.size());
    if (m * m < cols) throw PreconditionError("model_equality_report: interior too small for the dictionary");
    Eigen::MatrixXcd design(m * m, cols);
    for (Index c = 0; c < cols; ++c) {
        const Operator basis = rep.realize(dict[static_cast<std::size_t>(c)].second);
        design.col(c) = basis.interior_block().reshaped();
    }
    const Eigen::VectorXcd rhs = block.reshaped();

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    EqualityReport out;
    out.difference_norm = block.norm();
    out.rank = svd.rank();
    out.null_space = svd.matrixV().rightCols(cols - out.rank);
    if (out.rank == 0) throw NumericGuardError("model_equality_report: dictionary vanishes on this grid");

    const Eigen::VectorXcd coef = out.difference_norm == 0.0 ? Eigen::VectorXcd(Eigen::VectorXcd::Zero(cols)) : Eigen::VectorXcd(svd.solve(rhs));
    for (Index c = 0; c < cols; ++c) out.terms.push_back({dict[static_cast<std::size_t>(c)].first, coef[c]});
    out.unexplained_fraction = out.difference_norm == 0.0 ? 0.0 : (design * coef - rhs).norm() / rhs.norm();
    return out;
}

/// Result of matching the ladder-form Hamiltonian to the anticommutator form.
struct MappingReport {
    double mu_identified = 0.0;        ///< delta_t - lambda
    double mu_ladder_expansion = 0.0;  ///< (delta_t - lambda) / 2
    double mu_fitted = 0.0;            ///< coupling that removes the {X,P} sector of the difference
    bool identified_matches = false;
    bool expansion_matches = false;
    cplx commutator_coefficient;  ///< (c_XP - c_PX) / 2, minimum-norm split if rank deficient
    EqualityReport equality;      ///< decomposition of H_JR - H_BF(mu_identified)
};

/// Decompose H_JR(lambda, delta_t) - H_BF(mu = delta_t - lambda) and read off
/// the coupling mu* for which the {X,P} sector vanishes.
inline MappingReport swanson_mapping_report(const Grid& g, PhysParams pp, double match_tol = 1e-8) {
    MappingReport out;
    out.mu_identified = pp.delta_t - pp.lambda;
    out.mu_ladder_expansion = 0.5 * (pp.delta_t - pp.lambda);
    pp.mu = out.mu_identified;
    const Representation rep(g, pp);
    const Operator h_jr = build_swanson_jr(build_ladder(rep), rep);
    const Operator h_bf = build_swanson_bf(rep);
    out.equality = model_equality_report(h_jr, h_bf, rep);

    // i (mu_jr - mu_bf) {X,P} appears as equal XP and PX coefficients. The
    // sum c_XP + c_PX is identifiable only if no null direction moves it.
    const auto dict = equality_dictionary();
    Index i_xp = 0, i_px = 0;
    for (std::size_t c = 0; c < dict.size(); ++c) {
        if (dict[c].first == "XP") i_xp = static_cast<Index>(c);
        if (dict[c].first == "PX") i_px = static_cast<Index>(c);
    }
    for (Index v = 0; v < out.equality.null_space.cols(); ++v) {
        if (std::abs(out.equality.null_space(i_xp, v) + out.equality.null_space(i_px, v)) > 1e-8) {
            throw NumericGuardError("swanson_mapping_report: {X,P} coefficient is not identifiable on this grid");
        }
    }
    const cplx c_xp = out.equality.coefficient("XP");
    const cplx c_px = out.equality.coefficient("PX");
    out.mu_fitted = out.mu_identified + (0.5 * (c_xp + c_px)).imag();
    out.commutator_coefficient = 0.5 * (c_xp - c_px);
    const double scale = std::max(1.0, std::abs(out.mu_identified));
    out.identified_matches = std::abs(out.mu_fitted - out.mu_identified) <= match_tol * scale;
    out.expansion_matches = std::abs(out.mu_fitted - out.mu_ladder_expansion) <= match_tol * scale;
    return out;
}

} // namespace qhm

#endif // QHM_VERIFY_HPP
