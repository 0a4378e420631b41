#pragma once

/// Gamma/beta special functions and the Hurst-dependent constants of the
/// mixed fractional-Brownian-motion kernels. All functions are pure and
/// thread-safe.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace fredholm {

/// ln Gamma(x) for x > 0. Relative error below 1e-13 on (1e-6, 200].
inline double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: argument must be positive, got " + std::to_string(x));
    return std::lgamma(x);
}

/// Euler beta function B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), a,b > 0.
inline double beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("beta: parameters must be positive");
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

namespace detail {

/// Continued fraction for the regularized incomplete beta (modified Lentz).
/// Converges for x < (a+1)/(a+b+2); the caller switches to the symmetric
/// argument otherwise.
inline double inc_beta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr int max_iter = 500;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 3.0e-16) return h;
    }
    throw std::runtime_error("inc_beta: continued fraction did not converge");
}

} // namespace detail

/// Unregularized lower incomplete beta B(x,a,b) = int_0^x y^(a-1)(1-y)^(b-1) dy
/// for x in [0,1]. Parameters below 1e-6 are rejected rather than evaluated
/// with degraded accuracy.
inline double inc_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("inc_beta: parameters must be positive");
    if (a < 1e-6 || b < 1e-6)
        throw std::domain_error("inc_beta: parameter below 1e-6, accuracy not guaranteed");
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("inc_beta: x must lie in [0,1], got " + std::to_string(x));
    if (x == 0.0) return 0.0;
    if (x == 1.0) return beta(a, b);
    const double log_prefix = a * std::log(x) + b * std::log1p(-x);
    if (x < (a + 1.0) / (a + b + 2.0))
        return std::exp(log_prefix) * detail::inc_beta_cf(a, b, x) / a;
    // complement: B(x,a,b) = B(a,b) - B(1-x,b,a)
    return beta(a, b) - std::exp(log_prefix) * detail::inc_beta_cf(b, a, 1.0 - x) / b;
}

/// Constants attached to a Hurst index H in (0,1)\{1/2}.
///
/// c1 = sqrt( Gamma(2-2H) / (2H Gamma(H+1/2) Gamma(3/2-H)) )
/// c2 = ( c1 / Gamma(|H-1/2|) )^2
/// c3 = c2 * B(H-1/2, 2-2H), defined for H > 1/2 only
/// nu = 2H for H < 1/2, 2-2H for H > 1/2 (kernel singularity exponent)
struct HurstParams {
    double hurst;
    double nu;
    double c1;
    double c2;
    std::optional<double> c3;
};

inline HurstParams hurst_params(double hurst) {
    if (!(hurst > 0.0 && hurst < 1.0) || hurst == 0.5)
        throw std::domain_error("hurst_params: H must lie in (0,1) and differ from 1/2");
    HurstParams p;
    p.hurst = hurst;
    p.nu = hurst < 0.5 ? 2.0 * hurst : 2.0 - 2.0 * hurst;
    const double log_ratio =
        log_gamma(2.0 - 2.0 * hurst) - log_gamma(hurst + 0.5) - log_gamma(1.5 - hurst);
    p.c1 = std::sqrt(std::exp(log_ratio) / (2.0 * hurst));
    const double lg_half = log_gamma(std::abs(hurst - 0.5));
    p.c2 = p.c1 * p.c1 * std::exp(-2.0 * lg_half);
    if (hurst > 0.5) p.c3 = p.c2 * beta(hurst - 0.5, 2.0 - 2.0 * hurst);
    return p;
}

} // namespace fredholm
