#ifndef QHM_DERIVATIVE_HPP
#define QHM_DERIVATIVE_HPP

#include "qhm/operator.hpp"

namespace qhm {

/// d/dp on the grid: second-order central differences on interior rows,
/// second-order one-sided stencils on the first and last row.
inline Operator derivative_matrix(const Grid& g) {
    const Index n = g.n_points();
    if (n < 5) throw PreconditionError("derivative_matrix: needs at least 5 grid points");
    const double inv2h = 1.0 / (2.0 * g.spacing());
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
    for (Index j = 1; j + 1 < n; ++j) {
        d(j, j - 1) = -inv2h;
        d(j, j + 1) = inv2h;
    }
    d(0, 0) = -3.0 * inv2h;
    d(0, 1) = 4.0 * inv2h;
    d(0, 2) = -1.0 * inv2h;
    d(n - 1, n - 3) = 1.0 * inv2h;
    d(n - 1, n - 2) = -4.0 * inv2h;
    d(n - 1, n - 1) = 3.0 * inv2h;
    return Operator(g, std::move(d));
}

/// Compact three-point realization of the second-order operator
/// u -> (w d/dp)(w d/dp) u for a positive weight w(p), in conservative form
///
///   w_j [ w_{j+1/2} (u_{j+1} - u_j) - w_{j-1/2} (u_j - u_{j-1}) ] / h^2,
///
/// with half-point weights evaluated exactly. Samples outside the grid are
/// taken as zero.
template <class W>
Operator weighted_second_derivative(const Grid& g, W&& w) {
    const Index n = g.n_points();
    const double h = g.spacing();
    const double inv_h2 = 1.0 / (h * h);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        const double p = g.point(j);
        const double wj = w(p);
        const double wp = w(p + 0.5 * h);
        const double wm = w(p - 0.5 * h);
        a(j, j) = -wj * (wp + wm) * inv_h2;
        if (j + 1 < n) a(j, j + 1) = wj * wp * inv_h2;
        if (j > 0) a(j, j - 1) = wj * wm * inv_h2;
    }
    return Operator(g, std::move(a));
}

} // namespace qhm

#endif // QHM_DERIVATIVE_HPP
