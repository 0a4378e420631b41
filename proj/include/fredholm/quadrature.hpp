#pragma once

/// Adaptive quadrature for integrands with algebraic endpoint or interior
/// singularities. The interval is split at the listed singular points and
/// each cell is covered by panels geometrically graded (ratio 1/2) toward
/// both cell ends, with a fixed high-order Gauss-Legendre rule per panel.
/// Subdivision on a side stops once the panel contribution falls below
/// tol/10 and the geometric tail estimate is negligible.
///
/// Panels are constructed in offset space relative to the cell end they
/// grade toward, so the grading can descend far below the spacing of
/// representable points around a nonzero cell end. Integrands may opt in
/// to that precision by accepting (s, offset, anchor): `anchor` is the
/// cell end the panel grades toward (exactly one of the supplied
/// breakpoints), and `offset` is the signed exact distance s - anchor.
/// Plain integrands f(s) are also accepted.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "fredholm/errors.hpp"

namespace fredholm {

template <typename F>
concept OffsetIntegrand = requires(F f, double s, double u, double anchor) {
    { f(s, u, anchor) } -> std::convertible_to<double>;
};

template <typename F>
concept PlainIntegrand = requires(F f, double s) {
    { f(s) } -> std::convertible_to<double>;
};

template <typename F>
concept Integrand = OffsetIntegrand<F> || PlainIntegrand<F>;

struct QuadResult {
    double value;
    double abs_err_estimate;
    int subdivisions;
};

namespace detail {

struct GaussRule {
    std::vector<double> nodes;   // on (-1,1)
    std::vector<double> weights;
};

/// Gauss-Legendre nodes via Newton iteration on P_n (three-term recurrence).
inline GaussRule make_gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

inline const GaussRule& gauss_hi() {
    static const GaussRule rule = make_gauss_legendre(24);
    return rule;
}

inline const GaussRule& gauss_lo() {
    static const GaussRule rule = make_gauss_legendre(12);
    return rule;
}

/// Evaluate f on a panel given in offset space [u_lo, u_hi] from `anchor`.
/// `dir` is +1 when the cell extends to the right of the anchor, -1 to the
/// left. Returns the panel integral for the high rule and the |hi - lo|
/// error estimate.
template <Integrand F>
inline std::pair<double, double> panel_integral(F&& f, double anchor, double dir, double u_lo,
                                                double u_hi) {
    const GaussRule& hi = gauss_hi();
    const GaussRule& lo = gauss_lo();
    const double mid = 0.5 * (u_lo + u_hi);
    const double half = 0.5 * (u_hi - u_lo);
    auto eval = [&](double xi) {
        const double u = mid + half * xi;            // exact offset, always > 0
        const double s = anchor + dir * u;           // may round near the anchor
        if constexpr (OffsetIntegrand<F>) {
            return f(s, dir * u, anchor);
        } else {
            return f(s);
        }
    };
    double acc_hi = 0.0;
    for (std::size_t q = 0; q < hi.nodes.size(); ++q) acc_hi += hi.weights[q] * eval(hi.nodes[q]);
    double acc_lo = 0.0;
    for (std::size_t q = 0; q < lo.nodes.size(); ++q) acc_lo += lo.weights[q] * eval(lo.nodes[q]);
    acc_hi *= half;
    acc_lo *= half;
    return {acc_hi, std::abs(acc_hi - acc_lo)};
}

struct SideResult {
    double value = 0.0;
    double err = 0.0;
    int panels = 0;
    bool converged = false;
};

/// Integrate one half-cell of width `w` graded toward `anchor`. Near an
/// algebraic singularity u^(s-1) the panel contributions form a geometric
/// sequence with ratio 2^(-s); once the measured ratio has stabilized, the
/// remaining dyadic tail is summed in closed form.
template <Integrand F>
inline SideResult integrate_side(F&& f, double anchor, double dir, double w, double panel_tol,
                                 double side_tol, int max_depth) {
    SideResult r;
    double c1 = 0.0, c2 = 0.0;  // last two panel contributions
    double hi_off = w;
    for (int k = 0; k <= max_depth; ++k) {
        const double lo_off = hi_off * 0.5;
        auto [c, e] = panel_integral(f, anchor, dir, lo_off, hi_off);
        r.value += c;
        r.err += e;
        r.panels += 1;
        if (k >= 2) {
            if (c == 0.0 && c1 == 0.0) {
                r.converged = true;
                return r;
            }
            if (c1 != 0.0 && c2 != 0.0) {
                const double ratio = c / c1;
                const double prev_ratio = c1 / c2;
                if (std::abs(ratio) < 0.9995) {
                    const double tail = c * ratio / (1.0 - ratio);
                    const double dr = std::abs(ratio - prev_ratio);
                    const double one_minus = 1.0 - std::abs(ratio);
                    const bool ratio_stable = dr <= 0.05 * one_minus;
                    const double tail_err =
                        ratio_stable ? 4.0 * std::abs(c) * dr / (one_minus * one_minus)
                                     : std::abs(tail);
                    if (tail_err < side_tol && (std::abs(c) < panel_tol || ratio_stable)) {
                        r.value += tail;
                        r.err += tail_err + 4.0 * std::numeric_limits<double>::epsilon() *
                                                std::abs(tail);
                        r.converged = true;
                        return r;
                    }
                }
            }
        }
        c2 = c1;
        c1 = c;
        hi_off = lo_off;
        if (!(hi_off > 0.0)) break;  // offset underflow
    }
    // did not converge: count the last contribution toward the estimate
    r.err += std::max(std::abs(c1), side_tol);
    r.converged = false;
    return r;
}

} // namespace detail

/// Integrate f over (a, b) with algebraic singularities at `singular_points`
/// (interior points and/or the endpoints). `split_points` are additional
/// cell boundaries for integrands with jumps; no panel straddles one.
/// Throws QuadratureError when the achieved error estimate exceeds tol.
template <Integrand F>
QuadResult integrate_singular(F&& f, double a, double b, std::span<const double> singular_points,
                              double tol, std::span<const double> split_points = {}) {
    if (!(tol >= 1e-12)) throw std::invalid_argument("integrate_singular: tol must be >= 1e-12");
    if (!(a <= b)) throw std::invalid_argument("integrate_singular: requires a <= b");
    if (a == b) return {0.0, 0.0, 0};

    std::vector<double> cuts;
    cuts.push_back(a);
    cuts.push_back(b);
    for (double p : singular_points)
        if (p > a && p < b) cuts.push_back(p);
    for (double p : split_points)
        if (p > a && p < b) cuts.push_back(p);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const auto n_cells = cuts.size() - 1;
    const double panel_tol = tol / (10.0 * static_cast<double>(n_cells));
    const double side_tol = tol / (4.0 * static_cast<double>(2 * n_cells));
    constexpr int max_depth = 1100;

    QuadResult total{0.0, 0.0, 0};
    bool converged = true;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double alpha = cuts[c];
        const double beta = cuts[c + 1];
        const double w = 0.5 * (beta - alpha);
        if (!(w > 0.0)) continue;
        auto left = detail::integrate_side(f, alpha, +1.0, w, panel_tol, side_tol, max_depth);
        auto right = detail::integrate_side(f, beta, -1.0, w, panel_tol, side_tol, max_depth);
        total.value += left.value + right.value;
        total.abs_err_estimate += left.err + right.err;
        total.subdivisions += left.panels + right.panels;
        converged = converged && left.converged && right.converged;
    }
    if (!converged || total.abs_err_estimate > tol)
        throw QuadratureError(total.abs_err_estimate, tol);
    return total;
}

} // namespace fredholm
