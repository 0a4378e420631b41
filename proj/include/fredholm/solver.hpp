#pragma once

/// Dense solve of (I - K_N) x = g with partial-pivoting LU, plus error
/// metrics against a known exact solution and log-log convergence-rate fits.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fredholm/errors.hpp"
#include "fredholm/grid.hpp"
#include "fredholm/product_integration.hpp"

namespace fredholm {

/// Trapezoidal inner product on the grid: h * (u0 v0/2 + sum + u_{n-1} v_{n-1}/2).
inline double trapezoid_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v, double h) {
    if (u.size() != v.size()) throw std::invalid_argument("trapezoid_inner: length mismatch");
    const Eigen::Index n = u.size();
    double acc = 0.5 * (u(0) * v(0) + u(n - 1) * v(n - 1));
    for (Eigen::Index i = 1; i + 1 < n; ++i) acc += u(i) * v(i);
    return h * acc;
}

inline double trapezoid_norm(const Eigen::VectorXd& u, double h) {
    return std::sqrt(trapezoid_inner(u, u, h));
}

struct SolveReport {
    Eigen::VectorXd x;
    double residual_inf;
    double cond_estimate;
    bool ill_conditioned;  // cond_estimate > 1e12
    Grid grid;
};

/// Solve (I - K_N) x = g. Throws SingularMatrixError on an exactly zero
/// pivot; flags (not throws) when the 1-norm condition estimate exceeds 1e12.
inline SolveReport solve_system(const SystemMatrix& m, const Eigen::VectorXd& g) {
    const Eigen::Index n = m.entries.rows();
    if (g.size() != n) throw std::invalid_argument("solve_system: rhs length mismatch");

    DenseMatrix a = DenseMatrix::Identity(n, n) - m.entries;
    Eigen::PartialPivLU<DenseMatrix> lu(a);
    const auto& diag = lu.matrixLU().diagonal();
    for (Eigen::Index i = 0; i < n; ++i)
        if (diag(i) == 0.0) throw SingularMatrixError(static_cast<int>(i));

    Eigen::VectorXd x = lu.solve(g);
    const double rcond = lu.rcond();
    const double cond =
        rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    const double residual = (a * x - g).cwiseAbs().maxCoeff();
    return SolveReport{std::move(x), residual, cond, cond > 1e12, m.grid};
}

struct ErrorReport {
    double max_err;
    double l2_err;
    int n;
    double hurst;
};

/// Node-wise error metrics against an exact solution: max norm over nodes
/// and the trapezoidal discrete L2([0,T]) norm of the error.
inline ErrorReport error_report(const Eigen::VectorXd& x,
                                const std::function<double(double)>& exact, const Grid& g,
                                double hurst = std::numeric_limits<double>::quiet_NaN()) {
    if (x.size() != g.n) throw std::invalid_argument("error_report: length mismatch");
    Eigen::VectorXd e(g.n);
    for (int i = 0; i < g.n; ++i) e(i) = x(i) - exact(g.node(i));
    return ErrorReport{e.cwiseAbs().maxCoeff(), trapezoid_norm(e, g.h), g.n, hurst};
}

/// Negated slope of the least-squares fit of log(err) against log(N);
/// approximately 2 means O(N^-2).
inline double convergence_rate(const std::vector<std::pair<int, double>>& errors) {
    if (errors.size() < 3)
        throw std::invalid_argument("convergence_rate: need at least 3 entries");
    double sx = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < errors.size(); ++k) {
        if (k > 0 && errors[k].first <= errors[k - 1].first)
            throw std::invalid_argument("convergence_rate: N must be strictly increasing");
        if (!(errors[k].second > 0.0))
            throw std::invalid_argument("convergence_rate: errors must be positive");
        sx += std::log(static_cast<double>(errors[k].first));
        sy += std::log(errors[k].second);
    }
    const double mx = sx / static_cast<double>(errors.size());
    const double my = sy / static_cast<double>(errors.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [n, err] : errors) {
        const double dx = std::log(static_cast<double>(n)) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(err) - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("convergence_rate: degenerate fit, all N equal");
    return -sxy / sxx;
}

} // namespace fredholm
