#ifndef QHM_PARAMS_HPP
#define QHM_PARAMS_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "qhm/errors.hpp"

namespace qhm {

/// Physical constants and model couplings, natural units hbar = m = 1 by default.
struct PhysParams {
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;
    double mu = 0.0;       ///< coupling of i*mu*{X,P} in the anticommutator form
    double lambda = 0.0;   ///< coefficient of a^2 in the ladder form
    double delta_t = 0.0;  ///< coefficient of (a^dagger)^2 in the ladder form
    double tau = 0.0;      ///< minimal-length deformation, X = (1 + tau p^2) x0
    double gamma_t = 0.0;  ///< coefficient of the gauge term i*hbar*gamma_t*P in X

    void validate() const {
        for (double v : {hbar, mass, omega, mu, lambda, delta_t, tau, gamma_t}) {
            if (!std::isfinite(v)) throw PreconditionError("params: all values must be finite");
        }
        if (!(hbar > 0.0) || !(mass > 0.0) || !(omega > 0.0)) {
            throw PreconditionError("params: hbar, mass and omega must be positive");
        }
        if (tau < 0.0) throw PreconditionError("params: tau must be non-negative");
    }

    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        if (lambda != 0.0 && lambda == delta_t) {
            w.emplace_back("lambda == delta_t: the ladder-form Hamiltonian is Hermitian");
        }
        return w;
    }

    /// Metric exponent 2*mu/omega^2 of the undeformed model.
    double theta_star() const { return 2.0 * mu / (omega * omega); }
};

/// Parameters of the q-deformed commutator
///   [X,P] = i hbar q^{f(N)} s + i hbar (q^2 - 1)/s (delta gamma X^2 + alpha beta P^2
///           + i alpha delta XP - i beta gamma PX),   s = alpha delta + beta gamma,
/// subject to 4 alpha gamma = q^2 + 1.
struct QDeformParams {
    double q = 1.0;
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 0.5;
    double delta = 1.0;
    std::function<double(double)> f = [](double) { return 0.0; };

    double scale() const { return alpha * delta + beta * gamma; }

    void validate() const {
        if (!(q > 0.0) || !std::isfinite(q)) throw PreconditionError("qdeform: q must be positive");
        const double lhs = 4.0 * alpha * gamma;
        const double rhs = q * q + 1.0;
        if (!(std::abs(lhs - rhs) <= 1e-12)) {
            throw PreconditionError("qdeform: constraint 4*alpha*gamma = q^2 + 1 violated (" + std::to_string(lhs) +
                                    " vs " + std::to_string(rhs) + ")");
        }
        if (scale() == 0.0) throw PreconditionError("qdeform: alpha*delta + beta*gamma must be non-zero");
        if (!f) throw PreconditionError("qdeform: f is empty");
    }
};

} // namespace qhm

#endif // QHM_PARAMS_HPP
