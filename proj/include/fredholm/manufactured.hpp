#pragma once

/// Manufactured right-hand sides and fine-grid reference solves: given an
/// exact solution x, synthesize g(t) = x(t) - int_0^T K(t,s) x(s) ds by
/// adaptive quadrature so that solver output can be compared against x.

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

#include "fredholm/grid.hpp"
#include "fredholm/kernel.hpp"
#include "fredholm/product_integration.hpp"
#include "fredholm/quadrature.hpp"
#include "fredholm/solver.hpp"

namespace fredholm {

namespace detail {

/// Bounded kernel and solution factors evaluated next to a cell anchor: when
/// the quadrature point rounds onto the anchor itself, step one ulp toward
/// the side the offset came from so jumps and the corner limits of L are
/// evaluated on the correct side.
inline double side_consistent(double s, double u, double anchor) {
    if (s == anchor && u != 0.0)
        return std::nextafter(anchor, u > 0.0 ? std::numeric_limits<double>::infinity()
                                              : -std::numeric_limits<double>::infinity());
    return s;
}

} // namespace detail

/// g_j = x(t_j) - int_0^T multiplier * L(t_j,s) |t_j - s|^(-nu) x(s) ds, each
/// entry accurate to tol. `breakpoints` lists jump locations of x so that no
/// quadrature panel straddles one.
inline Eigen::VectorXd manufactured_rhs(const std::function<double(double)>& x_exact,
                                        const SingularKernel& kernel, const Grid& g, double tol,
                                        std::span<const double> breakpoints = {}) {
    Eigen::VectorXd rhs(g.n);
    for (int j = 0; j < g.n; ++j) {
        const double tj = g.node(j);
        auto integrand = [&](double s, double u, double anchor) {
            const double dist = anchor == tj ? std::abs(u) : std::abs(s - tj);
            const double s_eff = detail::side_consistent(s, u, anchor);
            return kernel.multiplier * kernel.numerator(tj, s_eff) * std::pow(dist, -kernel.nu) *
                   x_exact(s_eff);
        };
        const double node_arr[1] = {tj};
        const QuadResult q =
            integrate_singular(integrand, 0.0, g.t_max, std::span<const double>(node_arr), tol,
                               breakpoints);
        rhs(j) = x_exact(tj) - q.value;
    }
    return rhs;
}

/// Surrogate exact solution: run the same discretize+solve pipeline on a
/// grid with n_fine >= 4x the coarse node count and interpolate linearly
/// back to the coarse nodes.
inline Eigen::VectorXd reference_solution(const SingularKernel& kernel,
                                          const std::function<double(double)>& g_fn,
                                          const Grid& coarse, int n_fine) {
    if (n_fine < 4 * coarse.n)
        throw std::invalid_argument("reference_solution: n_fine must be at least 4x the coarse n");
    const Grid fine(coarse.t_max, n_fine);
    Eigen::VectorXd rhs(fine.n);
    for (int i = 0; i < fine.n; ++i) rhs(i) = g_fn(fine.node(i));
    const SolveReport fine_solve = solve_system(assemble(fine, kernel), rhs);

    Eigen::VectorXd out(coarse.n);
    for (int i = 0; i < coarse.n; ++i) {
        const double t = coarse.node(i);
        int k = static_cast<int>(std::floor(t / fine.h));
        k = std::min(std::max(k, 0), fine.n - 2);
        const double t0 = fine.node(k);
        const double w = (t - t0) / fine.h;
        out(i) = (1.0 - w) * fine_solve.x(k) + w * fine_solve.x(k + 1);
    }
    return out;
}

} // namespace fredholm
