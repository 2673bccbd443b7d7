#ifndef QHM_MODELS_HPP
#define QHM_MODELS_HPP

#include <cmath>
#include <utility>

#include "qhm/matrix_function.hpp"
#include "qhm/representation.hpp"

namespace qhm {

struct CanonicalPair {
    Operator x;
    Operator p;
};

/// x0 = i hbar D, p0 = diag(p).
inline CanonicalPair build_canonical_pair(const Grid& g, const PhysParams& pp) {
    pp.validate();
    return {I_unit * pp.hbar * derivative_matrix(g), Operator::from_profile(g, [](double p) { return p; })};
}

/// X = (1 + tau p^2) x0 with the gauge term, P = p0. See Representation.
inline CanonicalPair build_deformed_pair(const Grid& g, const PhysParams& pp) {
    Representation rep(g, pp);
    return {rep.x(), rep.p()};
}

struct Ladder {
    Polynomial a;      ///< (P - i omega X) / sqrt(2 m hbar omega)
    Polynomial a_dag;  ///< (P + i omega X) / sqrt(2 m hbar omega), by formula
    Operator a_op;
    Operator a_dag_op;
    /// Masked ||adjoint(a) - a_dag||, absolute and relative to ||a_dag||.
    /// Zero only when X is Hermitian on the interior.
    double adjoint_defect;
    double adjoint_defect_relative;
};

inline Ladder build_ladder(const Representation& rep) {
    const PhysParams& pp = rep.params();
    const double c = std::sqrt(2.0 * pp.mass * pp.hbar * pp.omega);
    const Polynomial x = Polynomial::x();
    const Polynomial p = Polynomial::p();
    Polynomial a = (1.0 / c) * (p - (I_unit * pp.omega) * x);
    Polynomial a_dag = (1.0 / c) * (p + (I_unit * pp.omega) * x);
    Operator a_op = rep.realize(a);
    Operator a_dag_op = rep.realize(a_dag);
    const Operator defect = a_op.adjoint() - a_dag_op;
    const double abs_defect = masked_norm(defect);
    const double rel_defect = abs_defect / masked_norm(a_dag_op);
    return {std::move(a), std::move(a_dag), std::move(a_op), std::move(a_dag_op), abs_defect, rel_defect};
}

/// P^2/(2m) + (m omega^2 / 2) X^2 + i mu {X, P}.
inline Polynomial swanson_bf_polynomial(const PhysParams& pp) {
    const Polynomial x = Polynomial::x();
    const Polynomial p = Polynomial::p();
    return (1.0 / (2.0 * pp.mass)) * (p * p) + (0.5 * pp.mass * pp.omega * pp.omega) * (x * x) +
           (I_unit * pp.mu) * anticommutator(x, p);
}

/// omega a_dag a + lambda a^2 + delta_t a_dag^2 + omega/2, expanded symbolically.
inline Polynomial swanson_jr_polynomial(const Ladder& l, const PhysParams& pp) {
    return pp.omega * (l.a_dag * l.a) + pp.lambda * (l.a * l.a) + pp.delta_t * (l.a_dag * l.a_dag) +
           Polynomial::constant(0.5 * pp.omega);
}

inline Operator build_swanson_bf(const Representation& rep) { return rep.realize(swanson_bf_polynomial(rep.params())); }

inline Operator build_swanson_jr(const Ladder& l, const Representation& rep) {
    return rep.realize(swanson_jr_polynomial(l, rep.params()));
}

/// Default number operator for the algebra checker: Hermitian part of a_dag a.
inline Operator default_number_operator(const Ladder& l, const Representation& rep) {
    return hermitian_part(rep.realize(l.a_dag * l.a));
}

/// Masked residual of the q-deformed commutator, relative to the masked norm
/// of its right-hand side.
inline double deformed_algebra_residual(const Operator& x, const Operator& p, const Operator& n_op,
                                        const QDeformParams& qp, const PhysParams& pp) {
    qp.validate();
    pp.validate();
    x.check_compatible(p);
    x.check_compatible(n_op);
    const double s = qp.scale();
    const double q = qp.q;
    auto f = qp.f;
    const Operator q_pow_f = hermitian_matrix_function(n_op, [q, f](double t) { return std::pow(q, f(t)); });

    const Operator lhs = commutator(x, p);
    Operator rhs = (I_unit * pp.hbar * s) * q_pow_f;
    if (q != 1.0) {
        const Operator poly = (qp.delta * qp.gamma) * (x * x) + (qp.alpha * qp.beta) * (p * p) +
                              (I_unit * qp.alpha * qp.delta) * (x * p) - (I_unit * qp.beta * qp.gamma) * (p * x);
        rhs += (I_unit * pp.hbar * (q * q - 1.0) / s) * poly;
    }
    return masked_relative_norm(lhs - rhs, rhs);
}

struct GaugeTransform {
    Operator s;
    Operator s_inv;
};

/// Diagonal S with S X(gamma_t) S^{-1} = X(0):
/// S = diag((1 + tau p^2)^{gamma_t / (2 tau)}), and diag(exp(gamma_t p^2 / 2)) at tau = 0.
inline GaugeTransform gauge_transform(const PhysParams& pp, const Grid& g) {
    pp.validate();
    Eigen::VectorXd phase(g.n_points());
    for (Index k = 0; k < g.n_points(); ++k) phase[k] = gauge_phase(pp, g.point(k));
    if (phase.maxCoeff() - phase.minCoeff() > std::log(1e14)) {
        throw NumericGuardError("gauge_transform: exponent range exceeds the 1e14 guard");
    }
    return {Operator::diagonal(g, phase.array().exp().cast<cplx>().matrix()),
            Operator::diagonal(g, (-phase).array().exp().cast<cplx>().matrix())};
}

} // namespace qhm

#endif // QHM_MODELS_HPP
