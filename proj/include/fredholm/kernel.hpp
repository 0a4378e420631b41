#pragma once

/// Numerators L(t,v) of weakly singular kernels K(t,s) = lambda * L(t,s) *
/// |t-s|^(-nu), including the mixed-fBm numerators for both Hurst regimes
/// and the box regularization that removes isolated discontinuities of L.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fredholm/errors.hpp"
#include "fredholm/special_functions.hpp"

namespace fredholm {

struct Point2 {
    double t;
    double v;
};

/// Incomplete-beta numerator for H < 1/2:
///   L(t,v) = B(x*, 1/2-H, 2H),  x* = (T/(t v max) - 1)/(T/(t v min) - 1).
/// Continuous on [0,T]^2 away from (0,0) and (T,T), where it has no limit;
/// zero when exactly one coordinate sits on {0, T}; equal to the full beta
/// B(1/2-H, 2H) on the open diagonal.
inline double numerator_lower(double t, double v, double hurst, double t_max) {
    if (!(hurst > 0.0 && hurst < 0.5))
        throw std::domain_error("numerator_lower: H must lie in (0, 1/2)");
    if (!(t >= 0.0 && t <= t_max && v >= 0.0 && v <= t_max))
        throw std::domain_error("numerator_lower: point outside [0,T]^2");
    const double mn = std::min(t, v);
    const double mx = std::max(t, v);
    if (mx == 0.0) throw UndefinedPointError(t, v);      // (0,0)
    if (mn == t_max) throw UndefinedPointError(t, v);    // (T,T)
    if (mn == 0.0 || mx == t_max) return 0.0;
    const double a = 0.5 - hurst;
    const double b = 2.0 * hurst;
    if (mn == mx) return beta(a, b);
    const double xs = ((t_max - mx) * mn) / ((t_max - mn) * mx);
    return inc_beta(std::min(xs, 1.0), a, b);
}

/// Constant numerator value B(H - 1/2, 2 - 2H) for H > 1/2; the full kernel
/// is this constant times |t-v|^(2H-2).
inline double numerator_upper_const(double hurst) {
    if (!(hurst > 0.5 && hurst < 1.0))
        throw std::domain_error("numerator_upper_const: H must lie in (1/2, 1)");
    return beta(hurst - 0.5, 2.0 - 2.0 * hurst);
}

/// Bounded symmetric-by-default numerator with a list of points where it has
/// no limit. Immutable after construction; evaluation is pure.
class Numerator {
public:
    enum class Kind { constant, hurst_lower, regularized, custom };

    static Numerator constant(double value, double t_max) {
        Numerator n;
        n.kind_ = Kind::constant;
        n.t_max_ = check_t_max(t_max);
        n.value_ = value;
        n.bound_ = std::abs(value);
        n.symmetric_ = true;
        return n;
    }

    static Numerator hurst_lower(double hurst, double t_max) {
        if (!(hurst > 0.0 && hurst < 0.5))
            throw std::domain_error("Numerator::hurst_lower: H must lie in (0, 1/2)");
        Numerator n;
        n.kind_ = Kind::hurst_lower;
        n.t_max_ = check_t_max(t_max);
        n.hurst_ = hurst;
        n.bound_ = beta(0.5 - hurst, 2.0 * hurst);
        n.disc_points_ = {{0.0, 0.0}, {t_max, t_max}};
        n.symmetric_ = true;
        return n;
    }

    static Numerator custom(std::function<double(double, double)> fn, double t_max, double bound,
                            std::vector<Point2> discontinuities = {}, bool symmetric = false) {
        Numerator n;
        n.kind_ = Kind::custom;
        n.t_max_ = check_t_max(t_max);
        n.fn_ = std::move(fn);
        n.bound_ = bound;
        n.disc_points_ = std::move(discontinuities);
        n.symmetric_ = symmetric;
        return n;
    }

    Kind kind() const noexcept { return kind_; }
    double t_max() const noexcept { return t_max_; }
    double bound() const noexcept { return bound_; }
    bool symmetric() const noexcept { return symmetric_; }
    const std::vector<Point2>& discontinuities() const noexcept { return disc_points_; }
    double radius() const noexcept { return radius_; }

    double operator()(double t, double v) const {
        switch (kind_) {
            case Kind::constant:
                return value_;
            case Kind::hurst_lower:
                return numerator_lower(t, v, hurst_, t_max_);
            case Kind::custom:
                return fn_(t, v);
            case Kind::regularized:
                return eval_regularized(t, v);
        }
        throw std::logic_error("Numerator: unreachable");
    }

    friend Numerator regularize(const Numerator& inner, double radius);

private:
    static double check_t_max(double t_max) {
        if (!(t_max > 0.0)) throw std::domain_error("Numerator: t_max must be positive");
        return t_max;
    }

    double eval_regularized(double t, double v) const {
        for (const Point2& p : inner_->disc_points_) {
            const double dist = std::max(std::abs(t - p.t), std::abs(v - p.v));
            if (dist <= radius_) {
                if (dist == 0.0) return 0.0;
                // project onto the box surface, scale by the relative distance
                const double scale = radius_ / dist;
                const double pt = p.t + scale * (t - p.t);
                const double pv = p.v + scale * (v - p.v);
                return (dist / radius_) * (*inner_)(pt, pv);
            }
        }
        return (*inner_)(t, v);
    }

    Kind kind_ = Kind::constant;
    double t_max_ = 1.0;
    double value_ = 0.0;
    double hurst_ = 0.0;
    double bound_ = 0.0;
    bool symmetric_ = false;
    std::function<double(double, double)> fn_;
    std::vector<Point2> disc_points_;
    std::shared_ptr<const Numerator> inner_;
    double radius_ = 0.0;
};

/// Replace L inside the closed max-norm boxes around its discontinuity
/// points by L_n(x) = (|x-x0|/r) * L(x0 + r (x-x0)/|x-x0|), which is
/// continuous on [0,T]^2, vanishes at the points themselves, agrees with L
/// outside the boxes and shares its bound. Boxes must be pairwise disjoint.
inline Numerator regularize(const Numerator& inner, double radius) {
    if (!(radius > 0.0)) throw std::domain_error("regularize: radius must be positive");
    const auto& pts = inner.disc_points_;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double dist =
                std::max(std::abs(pts[i].t - pts[j].t), std::abs(pts[i].v - pts[j].v));
            if (dist <= 2.0 * radius)
                throw std::domain_error("regularize: boxes around discontinuity points overlap");
        }
    Numerator n;
    n.kind_ = Numerator::Kind::regularized;
    n.t_max_ = inner.t_max_;
    n.bound_ = inner.bound_;
    n.symmetric_ = inner.symmetric_;
    n.inner_ = std::make_shared<Numerator>(inner);
    n.radius_ = radius;
    return n;
}

/// K(t,s) = multiplier * L(t,s) * |t-s|^(-nu), 0 < nu < 1.
struct SingularKernel {
    double nu;
    Numerator numerator;
    double multiplier;

    SingularKernel(double nu_, Numerator numerator_, double multiplier_)
        : nu(nu_), numerator(std::move(numerator_)), multiplier(multiplier_) {
        if (!(nu > 0.0 && nu < 1.0))
            throw std::domain_error("SingularKernel: nu must lie in (0,1)");
    }
};

/// Off-diagonal kernel value; the diagonal t = s is rejected (the
/// discretization integrates across it instead of sampling it).
inline double kernel_eval(const SingularKernel& k, double t, double s) {
    if (t == s) throw std::domain_error("kernel_eval: kernel is singular on the diagonal t = s");
    return k.multiplier * k.numerator(t, s) * std::pow(std::abs(t - s), -k.nu);
}

} // namespace fredholm
