#pragma once

/// Application layer for the mixed fractional-Brownian-motion drift
/// optimization equations: builds the Fredholm problem
///   x(t) + C2(H) int_0^T kappa_H(t,v) x(v) dv = f(t)
/// for a given Hurst index, solves it on a uniform grid, evaluates the
/// minimized objective, and runs convergence/regularization studies.
///
/// The generic solver works with x = K_N x + G, so the kernel multiplier
/// carries the sign flip: lambda = -C2(H) (and -C3(H) when the numerator
/// constant for H > 1/2 is folded in, leaving grid-level L = 1).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fredholm/grid.hpp"
#include "fredholm/kernel.hpp"
#include "fredholm/manufactured.hpp"
#include "fredholm/product_integration.hpp"
#include "fredholm/solver.hpp"
#include "fredholm/special_functions.hpp"

namespace fredholm {

/// Right-hand-side function on [0, t_max] with its known jump locations.
struct DriftFunction {
    std::function<double(double)> fn;
    std::vector<double> breakpoints;
    std::string name;
};

inline DriftFunction linear_t() {
    return {[](double t) { return t; }, {}, "linear_t"};
}

inline DriftFunction quadratic_t2() {
    return {[](double t) { return t * t; }, {}, "quadratic_t2"};
}

/// Piecewise constant: 8 on [0, T/2], -1 on (T/2, 3T/4], 4 on (3T/4, T].
inline DriftFunction piecewise_x2(double t_max = 1.0) {
    const double b1 = 0.5 * t_max;
    const double b2 = 0.75 * t_max;
    return {[b1, b2](double t) {
                if (t <= b1) return 8.0;
                if (t <= b2) return -1.0;
                return 4.0;
            },
            {b1, b2},
            "piecewise_x2"};
}

/// Piecewise-linear interpolant of a sampled table; clamps outside the
/// sampled range.
inline DriftFunction tabulated(std::vector<double> ts, std::vector<double> vs) {
    if (ts.size() != vs.size() || ts.size() < 2)
        throw std::invalid_argument("tabulated: need two same-length columns with >= 2 rows");
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (!(ts[i] > ts[i - 1]))
            throw std::invalid_argument("tabulated: abscissae must be strictly increasing");
    auto fn = [ts = std::move(ts), vs = std::move(vs)](double t) {
        if (t <= ts.front()) return vs.front();
        if (t >= ts.back()) return vs.back();
        const auto it = std::upper_bound(ts.begin(), ts.end(), t);
        const std::size_t k = static_cast<std::size_t>(it - ts.begin()) - 1;
        const double w = (t - ts[k]) / (ts[k + 1] - ts[k]);
        return (1.0 - w) * vs[k] + w * vs[k + 1];
    };
    return {std::move(fn), {}, "table"};
}

struct FeqProblem {
    double hurst;
    double t_max;
    DriftFunction f;
    int n;
    double regularization_radius;  // radius of the boxes around (0,0), (T,T)

    FeqProblem(double hurst_, double t_max_, DriftFunction f_, int n_, double radius = 0.0)
        : hurst(hurst_), t_max(t_max_), f(std::move(f_)), n(n_), regularization_radius(radius) {
        if (!(hurst > 0.0 && hurst < 1.0) || hurst == 0.5)
            throw std::domain_error("FeqProblem: H must lie in (0,1) and differ from 1/2");
        if (n < 3) throw std::domain_error("FeqProblem: need n >= 3");
        if (!(t_max > 0.0)) throw std::domain_error("FeqProblem: t_max must be positive");
        if (regularization_radius == 0.0) regularization_radius = t_max / (n - 1);
        if (!(regularization_radius > 0.0))
            throw std::domain_error("FeqProblem: regularization radius must be positive");
    }
};

/// Kernel of the drift-optimization equation for the given Hurst regime.
/// For H > 1/2 the constant numerator B(H-1/2, 2-2H) is folded into the
/// multiplier, so the grid-level numerator is identically 1.
inline SingularKernel mfbm_kernel(double hurst, double t_max, double regularization_radius) {
    const HurstParams hp = hurst_params(hurst);
    if (hurst > 0.5)
        return SingularKernel(hp.nu, Numerator::constant(1.0, t_max), -*hp.c3);
    return SingularKernel(
        hp.nu, regularize(Numerator::hurst_lower(hurst, t_max), regularization_radius), -hp.c2);
}

inline std::pair<SystemMatrix, Eigen::VectorXd> build_feq(const FeqProblem& p) {
    const Grid g(p.t_max, p.n);
    const SingularKernel k = mfbm_kernel(p.hurst, p.t_max, p.regularization_radius);
    Eigen::VectorXd rhs(g.n);
    for (int i = 0; i < g.n; ++i) rhs(i) = p.f.fn(g.node(i));
    return {assemble(g, k), std::move(rhs)};
}

struct FeqSolution {
    SolveReport report;
    Eigen::VectorXd f_nodes;

    Eigen::VectorXd f_minus_x() const { return f_nodes - report.x; }
};

inline FeqSolution solve_feq(const FeqProblem& p) {
    auto [matrix, rhs] = build_feq(p);
    SolveReport report = solve_system(matrix, rhs);
    return FeqSolution{std::move(report), std::move(rhs)};
}

/// Minimized objective M = <f - w, f> in the trapezoidal L2([0,T]) inner
/// product, where w solves the discrete equation. The entropy functional
/// value is M/2.
inline double objective_value(const FeqProblem& p, const Eigen::VectorXd& w) {
    const Grid g(p.t_max, p.n);
    if (w.size() != g.n) throw std::invalid_argument("objective_value: length mismatch");
    Eigen::VectorXd f(g.n);
    for (int i = 0; i < g.n; ++i) f(i) = p.f.fn(g.node(i));
    return trapezoid_inner(f - w, f, g.h);
}

/// Closed-form right-hand side whose exact solution is x(t) = t^2, valid for
/// H > 1/2 on [0,1]:
///   f3(t) = t^2 + C3(H) [ t^(2H+1)/(H(4H^2-1)) + (1-t)^(2H+1)/(2H+1)
///                         + t(1-t)^(2H)/H + t^2 (1-t)^(2H-1)/(2H-1) ].
inline double quadratic_rhs_closed_form(double t, const HurstParams& hp) {
    if (!hp.c3) throw std::domain_error("quadratic_rhs_closed_form: requires H > 1/2");
    const double H = hp.hurst;
    const double omt = 1.0 - t;
    const double bracket = std::pow(t, 2.0 * H + 1.0) / (H * (4.0 * H * H - 1.0)) +
                           std::pow(omt, 2.0 * H + 1.0) / (2.0 * H + 1.0) +
                           t * std::pow(omt, 2.0 * H) / H +
                           t * t * std::pow(omt, 2.0 * H - 1.0) / (2.0 * H - 1.0);
    return t * t + *hp.c3 * bracket;
}

struct StudyRow {
    int n;
    double hurst;
    double max_err;
    double l2_err;
};

struct StudyResult {
    std::vector<StudyRow> rows;  // sorted by n, then hurst
    double fitted_rate;          // mean of the per-H log-log rates
};

/// Error study for the manufactured quadratic solution (H > 1/2, T = 1):
/// solve with the closed-form right-hand side for every (n, H) pair and
/// record max and L2 errors against t^2.
inline StudyResult run_table(std::span<const double> hurst_list, std::span<const int> n_list) {
    if (hurst_list.empty() || n_list.empty())
        throw std::invalid_argument("run_table: empty input list");
    for (double H : hurst_list)
        if (!(H > 0.5 && H < 1.0))
            throw std::domain_error("run_table: requires H in (1/2, 1)");
    for (std::size_t k = 1; k < n_list.size(); ++k)
        if (n_list[k] <= n_list[k - 1])
            throw std::invalid_argument("run_table: n list must be ascending");

    StudyResult result;
    auto exact = [](double t) { return t * t; };
    for (int n : n_list) {
        for (double H : hurst_list) {
            const HurstParams hp = hurst_params(H);
            const Grid g(1.0, n);
            const SingularKernel k = mfbm_kernel(H, 1.0, g.h);
            Eigen::VectorXd rhs(g.n);
            for (int i = 0; i < g.n; ++i) rhs(i) = quadratic_rhs_closed_form(g.node(i), hp);
            const SolveReport sol = solve_system(assemble(g, k), rhs);
            const ErrorReport err = error_report(sol.x, exact, g, H);
            result.rows.push_back(StudyRow{n, H, err.max_err, err.l2_err});
        }
    }

    double rate_sum = 0.0;
    int rate_count = 0;
    if (n_list.size() >= 3) {
        for (double H : hurst_list) {
            std::vector<std::pair<int, double>> column;
            for (const StudyRow& row : result.rows)
                if (row.hurst == H) column.emplace_back(row.n, row.max_err);
            std::sort(column.begin(), column.end());
            rate_sum += convergence_rate(column);
            rate_count += 1;
        }
    }
    result.fitted_rate = rate_count > 0 ? rate_sum / rate_count
                                        : std::numeric_limits<double>::quiet_NaN();
    return result;
}

struct RegularizationStudy {
    std::vector<double> radii;
    std::vector<Eigen::VectorXd> solutions;
    std::vector<double> l2_distance_to_prev;  // first entry NaN
};

/// Solve the H < 1/2 problem with the box-regularized numerator at each
/// radius and report the trapezoidal L2 distances between consecutive
/// solutions.
inline RegularizationStudy regularization_study(double hurst, const DriftFunction& f, int n,
                                                std::span<const double> radii) {
    if (!(hurst > 0.0 && hurst < 0.5))
        throw std::domain_error("regularization_study: requires H in (0, 1/2)");
    if (radii.empty()) throw std::invalid_argument("regularization_study: empty radius list");
    for (std::size_t k = 1; k < radii.size(); ++k)
        if (radii[k] > radii[k - 1])
            throw std::invalid_argument("regularization_study: radii must be non-increasing");

    RegularizationStudy study;
    const Grid g(1.0, n);
    for (double r : radii) {
        const FeqProblem p(hurst, 1.0, f, n, r);
        FeqSolution sol = solve_feq(p);
        study.radii.push_back(r);
        if (study.solutions.empty())
            study.l2_distance_to_prev.push_back(std::numeric_limits<double>::quiet_NaN());
        else
            study.l2_distance_to_prev.push_back(
                trapezoid_norm(sol.report.x - study.solutions.back(), g.h));
        study.solutions.push_back(std::move(sol.report.x));
    }
    return study;
}

} // namespace fredholm
