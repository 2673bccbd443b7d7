#ifndef QHM_MATRIX_FUNCTION_HPP
#define QHM_MATRIX_FUNCTION_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "qhm/operator.hpp"

namespace qhm {

struct MatrixFunctionOptions {
    /// Relative anti-Hermitian part ||A - A^dagger||_F / ||A||_F accepted as Hermitian.
    double hermitian_tol = 1e-10;
    /// Reject spectra with non-positive eigenvalues (fractional powers, logs).
    bool require_positive = false;
    /// Overflow guard on max|f(lambda)| / min|f(lambda)|.
    double max_ratio = 1e14;
};

/// f(A) = U f(Lambda) U^dagger for Hermitian A and real-valued f.
template <class F>
Eigen::MatrixXcd hermitian_function(const Eigen::MatrixXcd& a, F&& f, const MatrixFunctionOptions& opt = {}) {
    const double scale = a.norm();
    if (scale > 0.0 && (a - a.adjoint()).norm() / scale >= opt.hermitian_tol) {
        throw PreconditionError("hermitian_matrix_function: input is not Hermitian within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (a + a.adjoint()));
    if (es.info() != Eigen::Success) throw NumericGuardError("hermitian_matrix_function: eigensolver failed");

    const Eigen::VectorXd& lam = es.eigenvalues();
    Eigen::VectorXd fl(lam.size());
    double fmax = 0.0;
    double fmin = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < lam.size(); ++i) {
        if (opt.require_positive && !(lam[i] > 0.0)) {
            throw PreconditionError("hermitian_matrix_function: non-positive eigenvalue " + std::to_string(lam[i]) +
                                    " under a fractional power");
        }
        fl[i] = f(lam[i]);
        if (!std::isfinite(fl[i])) throw NumericGuardError("hermitian_matrix_function: f(lambda) overflowed");
        fmax = std::max(fmax, std::abs(fl[i]));
        fmin = std::min(fmin, std::abs(fl[i]));
    }
    if (fmax > opt.max_ratio * fmin) {
        throw NumericGuardError("hermitian_matrix_function: max|f|/min|f| exceeds " + std::to_string(opt.max_ratio));
    }
    const Eigen::MatrixXcd& u = es.eigenvectors();
    return u * fl.cast<cplx>().asDiagonal() * u.adjoint();
}

template <class F>
Operator hermitian_matrix_function(const Operator& a, F&& f, const MatrixFunctionOptions& opt = {}) {
    return Operator(a.grid(), hermitian_function(a.matrix(), std::forward<F>(f), opt));
}

/// A^r for Hermitian positive-definite A.
inline Operator matrix_power(const Operator& a, double r) {
    MatrixFunctionOptions opt;
    opt.require_positive = true;
    return hermitian_matrix_function(a, [r](double t) { return std::pow(t, r); }, opt);
}

} // namespace qhm

#endif // QHM_MATRIX_FUNCTION_HPP
