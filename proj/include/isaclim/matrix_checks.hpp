#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "isaclim/errors.hpp"

namespace isaclim {

struct MatrixReport {
    double hermitian_deviation = 0.0;  // max |A - A^H| relative to max |A|
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;

    bool hermitian(double tol = 1e-12) const { return hermitian_deviation <= tol; }
    /// PSD up to floating-point dust, relative to the matrix scale.
    bool psd(double tol = 1e-10) const {
        const double scale = std::max(1.0, std::abs(max_eigenvalue));
        return min_eigenvalue >= -tol * scale;
    }
};

template <typename Derived>
MatrixReport analyze_hermitian(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m = a;
    MatrixReport rep;
    const double scale = std::max(1e-300, m.cwiseAbs().maxCoeff());
    rep.hermitian_deviation = (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> es(
        m, Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = es.eigenvalues().minCoeff();
    rep.max_eigenvalue = es.eigenvalues().maxCoeff();
    return rep;
}

/// Distinguishes rounding dust from model bugs: eigenvalues within the dust
/// band are accepted, genuinely negative ones throw.
template <typename Derived>
void require_psd(const Eigen::MatrixBase<Derived>& a, const std::string& what,
                 double tol = 1e-10) {
    const MatrixReport rep = analyze_hermitian(a);
    if (!rep.psd(tol))
        throw std::domain_error(what + ": matrix is not positive semidefinite (min eigenvalue " +
                                std::to_string(rep.min_eigenvalue) + ")");
}

} // namespace isaclim
