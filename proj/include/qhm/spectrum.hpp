#ifndef QHM_SPECTRUM_HPP
#define QHM_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qhm/operator.hpp"

namespace qhm {

struct SpectrumResult {
    /// Selected eigenvalues in order of increasing real part.
    std::vector<cplx> eigenvalues;
    /// Fraction of each selected eigenvector's squared norm on interior points.
    std::vector<double> interior_mass;
    /// max |Im lambda| over the selected eigenvalues.
    double reality_measure = 0.0;
};

/// The k eigenvalues of smallest real part whose right eigenvectors carry at
/// least `min_mass` of their weight on indices [begin, begin + size).
inline SpectrumResult lowest_eigenvalues(const Eigen::MatrixXcd& m, Index k, Index begin, Index size,
                                         double min_mass = 0.9) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, true);
    if (es.info() != Eigen::Success) throw NumericGuardError("spectrum: eigensolver failed");
    const Eigen::VectorXcd& lam = es.eigenvalues();
    const Eigen::MatrixXcd& vec = es.eigenvectors();

    std::vector<Index> order(static_cast<std::size_t>(lam.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return lam[a].real() < lam[b].real(); });

    SpectrumResult out;
    for (Index i : order) {
        if (static_cast<Index>(out.eigenvalues.size()) >= k) break;
        const double total = vec.col(i).squaredNorm();
        const double inner = vec.col(i).segment(begin, size).squaredNorm();
        const double mass = total > 0.0 ? inner / total : 0.0;
        if (mass < min_mass) continue;
        out.eigenvalues.push_back(lam[i]);
        out.interior_mass.push_back(mass);
        out.reality_measure = std::max(out.reality_measure, std::abs(lam[i].imag()));
    }
    return out;
}

/// Unfiltered lowest-k spectrum of a raw matrix.
inline SpectrumResult lowest_eigenvalues(const Eigen::MatrixXcd& m, Index k) {
    return lowest_eigenvalues(m, k, 0, m.rows(), 0.0);
}

/// Lowest-k interior-localized spectrum of a grid operator.
inline SpectrumResult spectrum(const Operator& h, Index k, double min_mass = 0.9) {
    const Grid& g = h.grid();
    return lowest_eigenvalues(h.matrix(), k, g.interior_begin(), g.interior_size(), min_mass);
}

/// Lowest-k interior-localized eigenvalues of a Hermitian operator (real).
inline std::vector<double> hermitian_spectrum(const Operator& h, Index k, double min_mass = 0.9) {
    const Grid& g = h.grid();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h.matrix() + h.matrix().adjoint()));
    if (es.info() != Eigen::Success) throw NumericGuardError("spectrum: eigensolver failed");
    std::vector<double> out;
    for (Index i = 0; i < es.eigenvalues().size() && static_cast<Index>(out.size()) < k; ++i) {
        const auto v = es.eigenvectors().col(i);
        if (v.segment(g.interior_begin(), g.interior_size()).squaredNorm() / v.squaredNorm() >= min_mass) {
            out.push_back(es.eigenvalues()[i]);
        }
    }
    return out;
}

} // namespace qhm

#endif // QHM_SPECTRUM_HPP
