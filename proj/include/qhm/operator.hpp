#ifndef QHM_OPERATOR_HPP
#define QHM_OPERATOR_HPP

#include <complex>
#include <type_traits>
#include <utility>

#include <Eigen/Dense>

#include "qhm/errors.hpp"
#include "qhm/grid.hpp"

namespace qhm {

using cplx = std::complex<double>;
using Eigen::Index;

inline constexpr cplx I_unit{0.0, 1.0};

// Raw-matrix algebra. These work on any Eigen expressions and are what the
// Operator overloads below forward to.

template <class A, class B>
Eigen::MatrixXcd commutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return a * b - b * a;
}

template <class A, class B>
Eigen::MatrixXcd anticommutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return a * b + b * a;
}

/// Dense square operator realized on a momentum grid.
class Operator {
public:
    Operator(Grid grid, Eigen::MatrixXcd entries) : grid_(std::move(grid)), m_(std::move(entries)) {
        if (m_.rows() != grid_.n_points() || m_.cols() != grid_.n_points()) {
            throw DimensionError("operator: entries must be n_points x n_points");
        }
    }

    static Operator zero(const Grid& g) {
        return Operator(g, Eigen::MatrixXcd::Zero(g.n_points(), g.n_points()));
    }
    static Operator identity(const Grid& g) {
        return Operator(g, Eigen::MatrixXcd::Identity(g.n_points(), g.n_points()));
    }
    static Operator diagonal(const Grid& g, const Eigen::VectorXcd& d) {
        if (d.size() != g.n_points()) throw DimensionError("operator: diagonal has wrong length");
        return Operator(g, d.asDiagonal().toDenseMatrix());
    }

    /// Multiplication operator by a scalar function of momentum.
    template <class F>
    static Operator from_profile(const Grid& g, F&& f) {
        Eigen::VectorXcd d(g.n_points());
        for (Index k = 0; k < g.n_points(); ++k) d[k] = cplx(f(g.point(k)));
        return diagonal(g, d);
    }

    const Grid& grid() const noexcept { return grid_; }
    const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
    Index dim() const noexcept { return m_.rows(); }
    cplx operator()(Index r, Index c) const { return m_(r, c); }

    Operator adjoint() const { return Operator(grid_, m_.adjoint()); }

    /// Interior-by-interior sub-block.
    auto interior_block() const {
        return m_.block(grid_.interior_begin(), grid_.interior_begin(), grid_.interior_size(),
                        grid_.interior_size());
    }

    Operator& operator+=(const Operator& o) {
        check_compatible(o);
        m_ += o.m_;
        return *this;
    }
    Operator& operator-=(const Operator& o) {
        check_compatible(o);
        m_ -= o.m_;
        return *this;
    }
    Operator& operator*=(cplx c) {
        m_ *= c;
        return *this;
    }

    void check_compatible(const Operator& o) const {
        if (!(grid_ == o.grid_) || dim() != o.dim()) {
            throw DimensionError("operator: operands live on different grids");
        }
    }

private:
    Grid grid_;
    Eigen::MatrixXcd m_;
};

inline Operator operator+(Operator a, const Operator& b) { return a += b; }
inline Operator operator-(Operator a, const Operator& b) { return a -= b; }
inline Operator operator*(cplx c, Operator a) { return a *= c; }
inline Operator operator*(Operator a, cplx c) { return a *= c; }
inline Operator operator-(Operator a) { return a *= -1.0; }

inline Operator operator*(const Operator& a, const Operator& b) {
    a.check_compatible(b);
    return Operator(a.grid(), a.matrix() * b.matrix());
}

inline Operator adjoint(const Operator& a) { return a.adjoint(); }

inline Operator commutator(const Operator& a, const Operator& b) {
    a.check_compatible(b);
    return Operator(a.grid(), commutator(a.matrix(), b.matrix()));
}

inline Operator anticommutator(const Operator& a, const Operator& b) {
    a.check_compatible(b);
    return Operator(a.grid(), anticommutator(a.matrix(), b.matrix()));
}

/// Hermitian part (A + A^dagger) / 2.
inline Operator hermitian_part(const Operator& a) {
    return Operator(a.grid(), 0.5 * (a.matrix() + a.matrix().adjoint()));
}

enum class Masking { interior, full };

/// Frobenius norm, over the interior block by default.
inline double masked_norm(const Operator& a, Masking m = Masking::interior) {
    return m == Masking::interior ? a.interior_block().norm() : a.matrix().norm();
}

/// Masked norm of `a` divided by the product of the masked norms of `refs`.
template <class... Refs>
double masked_relative_norm(const Operator& a, Masking m, const Refs&... refs) {
    static_assert((std::is_same_v<Refs, Operator> && ...), "references must be Operators");
    double denom = 1.0;
    ((denom *= masked_norm(refs, m)), ...);
    if (denom == 0.0) throw NumericGuardError("masked_relative_norm: reference operator has zero norm");
    return masked_norm(a, m) / denom;
}

template <class... Refs>
double masked_relative_norm(const Operator& a, const Refs&... refs) {
    return masked_relative_norm(a, Masking::interior, refs...);
}

} // namespace qhm

#endif // QHM_OPERATOR_HPP
