#ifndef QHM_REPRESENTATION_HPP
#define QHM_REPRESENTATION_HPP

#include <cmath>
#include <utility>

#include "qhm/derivative.hpp"
#include "qhm/params.hpp"
#include "qhm/polynomial.hpp"

namespace qhm {

/// How the second-order word XX is realized.
enum class SquareStencil {
    /// Conservative three-point stencil for -hbar^2 (w d/dp)^2, w = 1 + tau p^2.
    /// Every term of a quadratic Hamiltonian then couples nearest neighbours
    /// only, so diagonal similarity transforms act consistently on all terms.
    compact,
    /// Literal matrix product X*X of the central-difference X (couples j +- 2).
    product,
};

/// Deformation weight 1 + tau p^2.
inline double deform_weight(double tau, double p) { return 1.0 + tau * p * p; }

/// Phase phi(p) whose exponential removes the gauge term: with
/// S = diag(exp(phi)), S X(gamma_t) S^{-1} = X(0).
/// phi = gamma_t/(2 tau) log(1 + tau p^2), and gamma_t p^2 / 2 at tau = 0.
inline double gauge_phase(const PhysParams& pp, double p) {
    if (pp.gamma_t == 0.0) return 0.0;
    if (pp.tau == 0.0) return 0.5 * pp.gamma_t * p * p;
    return pp.gamma_t / (2.0 * pp.tau) * std::log1p(pp.tau * p * p);
}

/// Realization of the deformed canonical pair and of polynomials in it on a grid.
///
///   x0 = i hbar D,   p0 = diag(p),
///   X  = G diag(1 + tau p^2) x0 G^{-1},   G = diag(exp(-phi)),   P = p0.
///
/// Conjugating by G is the link-variable form of adding i hbar gamma_t P to X:
/// it agrees with diag(1 + tau p^2) x0 + i hbar gamma_t diag(p) to O(h^2) on
/// smooth vectors and keeps the gauge term an exact similarity on the grid.
class Representation {
public:
    Representation(Grid grid, PhysParams pp, SquareStencil stencil = SquareStencil::compact)
        : grid_(std::move(grid)),
          pp_(pp),
          stencil_(stencil),
          x0_(I_unit * pp.hbar * derivative_matrix(grid_)),
          p0_(Operator::from_profile(grid_, [](double p) { return p; })),
          x_(Operator::zero(grid_)),
          xx_(Operator::zero(grid_)) {
        pp_.validate();
        const double tau = pp_.tau;
        auto w = [tau](double p) { return deform_weight(tau, p); };

        Operator x_plain = Operator::from_profile(grid_, w) * x0_;
        Operator xx_plain = stencil_ == SquareStencil::compact
                                ? (-pp_.hbar * pp_.hbar) * weighted_second_derivative(grid_, w)
                                : x_plain * x_plain;

        phase_.resize(grid_.n_points());
        for (Index k = 0; k < grid_.n_points(); ++k) phase_[k] = gauge_phase(pp_, grid_.point(k));
        if (phase_.maxCoeff() - phase_.minCoeff() > std::log(1e14)) {
            throw NumericGuardError("representation: gauge factor exceeds the 1e14 conditioning guard");
        }
        x_ = conjugate_by_gauge(x_plain);
        xx_ = conjugate_by_gauge(xx_plain);
    }

    const Grid& grid() const noexcept { return grid_; }
    const PhysParams& params() const noexcept { return pp_; }
    SquareStencil stencil() const noexcept { return stencil_; }

    const Operator& x0() const noexcept { return x0_; }
    const Operator& p0() const noexcept { return p0_; }
    const Operator& x() const noexcept { return x_; }
    const Operator& p() const noexcept { return p0_; }
    const Operator& x_squared() const noexcept { return xx_; }

    /// phi(p_k), see gauge_phase.
    const Eigen::VectorXd& phase() const noexcept { return phase_; }

    /// Realize a polynomial. Adjacent XX pairs (taken left to right) use the
    /// square stencil; everything else is a matrix product.
    Operator realize(const Polynomial& poly) const {
        const Index n = grid_.n_points();
        Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(n, n);
        const Eigen::VectorXd p = grid_.points();
        for (const auto& [word, coeff] : poly.terms()) {
            Eigen::MatrixXcd acc;
            bool is_identity = true;
            auto apply = [&](const Eigen::MatrixXcd& f) {
                if (is_identity) {
                    acc = f;
                } else {
                    acc = (acc * f).eval();
                }
                is_identity = false;
            };
            for (std::size_t i = 0; i < word.size(); ++i) {
                if (word[i] == 'P') {
                    if (is_identity) {
                        acc = p.cast<cplx>().asDiagonal().toDenseMatrix();
                        is_identity = false;
                    } else {
                        acc = acc * p.cast<cplx>().asDiagonal();
                    }
                } else if (i + 1 < word.size() && word[i + 1] == 'X') {
                    apply(xx_.matrix());
                    ++i;
                } else {
                    apply(x_.matrix());
                }
            }
            if (is_identity) {
                total.diagonal().array() += coeff;
            } else {
                total += coeff * acc;
            }
        }
        return Operator(grid_, std::move(total));
    }

private:
    Operator conjugate_by_gauge(const Operator& a) const {
        if (pp_.gamma_t == 0.0) return a;
        const Eigen::ArrayXd left = (-phase_).array().exp();
        const Eigen::ArrayXd right = phase_.array().exp();
        Eigen::MatrixXcd m = a.matrix();
        for (Index c = 0; c < m.cols(); ++c) {
            m.col(c).array() *= left.cast<cplx>() * right[c];
        }
        return Operator(grid_, std::move(m));
    }

    Grid grid_;
    PhysParams pp_;
    SquareStencil stencil_;
    Operator x0_;
    Operator p0_;
    Operator x_;
    Operator xx_;
    Eigen::VectorXd phase_;
};

} // namespace qhm

#endif // QHM_REPRESENTATION_HPP
