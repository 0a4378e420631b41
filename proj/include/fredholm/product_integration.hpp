#pragma once

/// Product-integration discretization of int_0^T K(t,s) x(s) ds for kernels
/// K = lambda * L(t,s) |t-s|^(-nu): the unknown is interpolated piecewise
/// linearly on a uniform grid and the singular factor is integrated exactly
/// against the interpolant, giving closed-form weights psi1/psi2 and the
/// dense system matrix K_N with entries
///   K[j][i] = lambda * L(t_j, t_i) * (psi1_i(t_j) + psi2_i(t_j)).

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "fredholm/grid.hpp"
#include "fredholm/kernel.hpp"

namespace fredholm {

using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace detail {

/// x^p - y^p for x, y >= 0 without cancellation: when the bases are within
/// 1e-3 relative the difference goes through expm1(p*log(x/y)).
inline double pow_diff(double x, double y, double p) {
    if (x == y) return 0.0;
    if (y == 0.0) return std::pow(x, p);
    if (x == 0.0) return -std::pow(y, p);
    if (std::abs(x - y) < 1e-3 * std::max(x, y))
        return std::pow(y, p) * std::expm1(p * std::log(x / y));
    return std::pow(x, p) - std::pow(y, p);
}

} // namespace detail

/// Forward weight of node i (panel [t_i, t_{i+1}]) evaluated at node j:
///   psi1 = (1/h) int_{t_i}^{t_{i+1}} (t_{i+1} - s) |t_j - s|^(-nu) ds.
/// Indices are 0-based; i in [0, n-2], j in [0, n-1].
inline double psi1(const Grid& g, int i, int j, double nu) {
    if (i < 0 || i > g.n - 2 || j < 0 || j > g.n - 1)
        throw std::out_of_range("psi1: index out of range (i=" + std::to_string(i) +
                                ", j=" + std::to_string(j) + ")");
    if (!(nu > 0.0 && nu < 1.0)) throw std::domain_error("psi1: nu must lie in (0,1)");
    const double h = g.h;
    if (j == i) return std::pow(h, 1.0 - nu) / ((1.0 - nu) * (2.0 - nu));
    if (j == i + 1) return std::pow(h, 1.0 - nu) / (2.0 - nu);
    const double da = std::abs(static_cast<double>(i + 1 - j)) * h;  // |t_{i+1} - t_j|
    const double db = std::abs(static_cast<double>(i - j)) * h;      // |t_i - t_j|
    return (da / h) * detail::pow_diff(da, db, 1.0 - nu) / (1.0 - nu) -
           detail::pow_diff(da, db, 2.0 - nu) / ((2.0 - nu) * h);
}

/// Backward weight of node i (panel [t_{i-1}, t_i]) evaluated at node j:
///   psi2 = (1/h) int_{t_{i-1}}^{t_i} (s - t_{i-1}) |t_j - s|^(-nu) ds.
/// Indices are 0-based; i in [1, n-1], j in [0, n-1].
inline double psi2(const Grid& g, int i, int j, double nu) {
    if (i < 1 || i > g.n - 1 || j < 0 || j > g.n - 1)
        throw std::out_of_range("psi2: index out of range (i=" + std::to_string(i) +
                                ", j=" + std::to_string(j) + ")");
    if (!(nu > 0.0 && nu < 1.0)) throw std::domain_error("psi2: nu must lie in (0,1)");
    const double h = g.h;
    if (j == i) return std::pow(h, 1.0 - nu) / ((1.0 - nu) * (2.0 - nu));
    if (j == i - 1) return std::pow(h, 1.0 - nu) / (2.0 - nu);
    const double dc = std::abs(static_cast<double>(i - j)) * h;      // |t_i - t_j|
    const double dd = std::abs(static_cast<double>(i - 1 - j)) * h;  // |t_{i-1} - t_j|
    return detail::pow_diff(dc, dd, 2.0 - nu) / ((2.0 - nu) * h) -
           (dd / h) * detail::pow_diff(dc, dd, 1.0 - nu) / (1.0 - nu);
}

struct SystemMatrix {
    DenseMatrix entries;
    Grid grid;
    SingularKernel kernel;
};

/// Assemble the dense N x N product-integration matrix. Nodes without a
/// forward (i = n-1) or backward (i = 0) panel contribute zero for that
/// weight. Deterministic; propagates UndefinedPointError when the numerator
/// is not total on the grid (regularization was skipped).
inline SystemMatrix assemble(const Grid& g, const SingularKernel& kernel) {
    const int n = g.n;
    const double nu = kernel.nu;
    const double lambda = kernel.multiplier;

    DenseMatrix numer(n, n);
    if (kernel.numerator.symmetric()) {
        for (int j = 0; j < n; ++j) {
            for (int i = j; i < n; ++i) {
                const double val = kernel.numerator(g.node(j), g.node(i));
                numer(j, i) = val;
                numer(i, j) = val;
            }
        }
    } else {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) numer(j, i) = kernel.numerator(g.node(j), g.node(i));
    }

    DenseMatrix entries(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            double w = 0.0;
            if (i <= n - 2) w += psi1(g, i, j, nu);
            if (i >= 1) w += psi2(g, i, j, nu);
            entries(j, i) = lambda * numer(j, i) * w;
        }
    }
    return SystemMatrix{std::move(entries), g, kernel};
}

} // namespace fredholm
