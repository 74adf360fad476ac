#pragma once

#include <Eigen/Dense>
#include <vector>

#include "isaclim/constants.hpp"
#include "isaclim/errors.hpp"

namespace isaclim {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

/// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix of the orthogonal
/// polynomial recurrence, weights are mu0 * (first eigenvector component)^2.
inline QuadratureRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& subdiag,
                                   double mu0) {
    const int n = static_cast<int>(diag.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = solver.eigenvalues()(i);
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

} // namespace detail

/// Gauss-Laguerre rule: integral_0^inf f(x) e^-x dx ~= sum w_i f(x_i).
inline QuadratureRule gauss_laguerre(int n) {
    check(n >= 2, "gauss_laguerre: need at least 2 nodes");
    Eigen::VectorXd diag(n), sub(n - 1);
    for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + 1.0;
    for (int i = 1; i < n; ++i) sub(i - 1) = static_cast<double>(i);
    return detail::golub_welsch(diag, sub, 1.0);
}

/// Gauss-Hermite rule: integral f(x) e^{-x^2} dx ~= sum w_i f(x_i).
inline QuadratureRule gauss_hermite(int n) {
    check(n >= 2, "gauss_hermite: need at least 2 nodes");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1);
    for (int i = 1; i < n; ++i) sub(i - 1) = std::sqrt(i / 2.0);
    return detail::golub_welsch(diag, sub, std::sqrt(pi));
}

} // namespace isaclim
