#ifndef QHM_GRID_HPP
#define QHM_GRID_HPP

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "qhm/errors.hpp"

namespace qhm {

/// Truncated, uniformly sampled momentum interval [-p_max, p_max].
///
/// The number of points is odd so that p = 0 is a sample. Norms used for
/// verification are taken over the interior index range, which drops
/// floor(mask_fraction * n_points) points at each end.
class Grid {
public:
    Grid() : Grid(257, 8.0, 0.25) {}

    Grid(Eigen::Index n_points, double p_max, double mask_fraction = 0.25)
        : n_points_(n_points), p_max_(p_max), mask_fraction_(mask_fraction) {
        if (n_points_ < 3 || n_points_ % 2 == 0) {
            throw PreconditionError("grid: n_points must be odd and >= 3 so that p = 0 is a sample (got " +
                                    std::to_string(n_points_) + ")");
        }
        if (!(p_max_ > 0.0) || !std::isfinite(p_max_)) {
            throw PreconditionError("grid: p_max must be positive and finite");
        }
        if (!(mask_fraction_ >= 0.0 && mask_fraction_ < 0.5)) {
            throw PreconditionError("grid: mask_fraction must lie in [0, 0.5)");
        }
        if (interior_size() < 3) {
            throw PreconditionError("grid: interior must keep at least 3 points after masking");
        }
    }

    Eigen::Index n_points() const noexcept { return n_points_; }
    double p_max() const noexcept { return p_max_; }
    double mask_fraction() const noexcept { return mask_fraction_; }

    double spacing() const noexcept { return 2.0 * p_max_ / static_cast<double>(n_points_ - 1); }

    /// Sample k, computed about the centre so that the centre is exactly zero
    /// and the grid is exactly symmetric.
    double point(Eigen::Index k) const noexcept {
        return static_cast<double>(k - zero_index()) * spacing();
    }

    Eigen::VectorXd points() const {
        Eigen::VectorXd p(n_points_);
        for (Eigen::Index k = 0; k < n_points_; ++k) p[k] = point(k);
        return p;
    }

    Eigen::Index zero_index() const noexcept { return (n_points_ - 1) / 2; }

    /// Number of points dropped at each end.
    Eigen::Index mask_count() const noexcept {
        return static_cast<Eigen::Index>(std::floor(mask_fraction_ * static_cast<double>(n_points_)));
    }
    Eigen::Index interior_begin() const noexcept { return mask_count(); }
    Eigen::Index interior_size() const noexcept { return n_points_ - 2 * mask_count(); }

    bool is_interior(Eigen::Index k) const noexcept {
        return k >= interior_begin() && k < interior_begin() + interior_size();
    }

    Grid with_points(Eigen::Index n) const { return Grid(n, p_max_, mask_fraction_); }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    Eigen::Index n_points_;
    double p_max_;
    double mask_fraction_;
};

/// Default grid for commutator and algebra checks.
inline Grid algebra_grid() { return Grid(257, 8.0, 0.25); }

/// Default grid for spectra and metric residuals.
inline Grid spectral_grid() { return Grid(513, 10.0, 0.25); }

} // namespace qhm

#endif // QHM_GRID_HPP
